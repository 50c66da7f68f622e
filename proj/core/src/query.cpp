#include "xmv/query.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace xmv {

std::string_view to_string(AggregateOp op)
{
    switch (op) {
        case AggregateOp::Sum: return "sum";
        case AggregateOp::Count: return "count";
        case AggregateOp::Min: return "min";
        case AggregateOp::Max: return "max";
        case AggregateOp::Avg: return "avg";
    }
    return "?";
}

AggregateOp aggregate_op_from(std::string_view name)
{
    if (iequals(name, "sum"))
        return AggregateOp::Sum;
    if (iequals(name, "count"))
        return AggregateOp::Count;
    if (iequals(name, "min"))
        return AggregateOp::Min;
    if (iequals(name, "max"))
        return AggregateOp::Max;
    if (iequals(name, "avg"))
        return AggregateOp::Avg;
    throw ValidationError("unknown aggregate operation '" + std::string(name) + "'");
}

namespace {

enum class TokenKind {
    Word,       // for, Level, sum, Dimensions.xml, ...
    Variable,   // $a
    AttrRef,    // @cust_city
    String,     // 'Lyon' or "Lyon"
    Punct,      // ( ) [ ] , / = and :=
    End,
};

struct Token
{
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && text == p; }
    bool is_word(std::string_view w) const { return kind == TokenKind::Word && iequals(text, w); }
};

bool is_word_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Lexer
{
public:
    explicit Lexer(std::string_view input) : input_(input) { advance(); }

    const Token &current() const { return tok_; }

    Token take()
    {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string &message) const
    {
        throw ParseError(message, tok_.line, tok_.column);
    }

    [[noreturn]] void unsupported(const std::string &construct) const
    {
        throw UnsupportedConstructError(construct, tok_.line, tok_.column);
    }

private:
    void advance()
    {
        skip_space();
        tok_ = Token{TokenKind::End, "", line_, col_};
        if (pos_ >= input_.size())
            return;

        const char c = input_[pos_];
        if (c == '$') {
            bump();
            tok_.kind = TokenKind::Variable;
            tok_.text = read_word("variable name");
            return;
        }
        if (c == '@') {
            bump();
            tok_.kind = TokenKind::AttrRef;
            tok_.text = read_word("attribute name");
            return;
        }
        if (c == '\'' || c == '"') {
            const char quote = c;
            bump();
            tok_.kind = TokenKind::String;
            while (pos_ < input_.size() && input_[pos_] != quote)
                tok_.text.push_back(bump());
            if (pos_ >= input_.size())
                throw ParseError("unterminated string literal", tok_.line, tok_.column);
            bump();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = TokenKind::Word;
            tok_.text = read_word("name");
            return;
        }
        if (c == ':' && pos_ + 1 < input_.size() && input_[pos_ + 1] == '=') {
            bump();
            bump();
            tok_.kind = TokenKind::Punct;
            tok_.text = ":=";
            return;
        }
        if (c == '!' || c == '<' || c == '>')
            throw UnsupportedConstructError("inequality comparison ('" + std::string(1, c) + "')", line_, col_);
        if (std::string_view("()[],/=").find(c) != std::string_view::npos) {
            bump();
            tok_.kind = TokenKind::Punct;
            tok_.text = std::string(1, c);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    std::string read_word(const char *what)
    {
        if (pos_ >= input_.size() || !is_word_char(input_[pos_]))
            throw ParseError(std::string("expected ") + what, line_, col_);
        std::string word;
        while (pos_ < input_.size() && is_word_char(input_[pos_]))
            word.push_back(bump());
        return word;
    }

    void skip_space()
    {
        while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[pos_])))
            bump();
    }

    char bump()
    {
        const char c = input_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token tok_;
};

class QueryParser
{
public:
    explicit QueryParser(std::string_view text) : lex_(text) {}

    DecisionQuery parse()
    {
        expect_word("for");
        parse_for_clause();
        if (lex_.current().is_word("let"))
            parse_let_clause();
        if (lex_.current().is_word("where"))
            parse_where_clause();
        if (lex_.current().is_word("order"))
            lex_.unsupported("order by clause");
        if (lex_.current().is_word("group"))
            parse_group_by();
        expect_word("return");
        parse_return_clause();
        if (lex_.current().kind != TokenKind::End)
            lex_.fail("unexpected trailing input '" + lex_.current().text + "'");

        finish_pending_predicates();
        if (query_.predicates.empty() && query_.group_by.empty())
            throw ValidationError("query has neither selection predicates nor a group by clause");
        return std::move(query_);
    }

private:
    struct Binding
    {
        enum class Kind { Dimension, Fact } kind = Kind::Dimension;
        std::string dimension;  // for dimension bindings
    };

    void expect_word(std::string_view word)
    {
        if (!lex_.current().is_word(word))
            lex_.fail("expected '" + std::string(word) + "', found '" + lex_.current().text + "'");
        lex_.take();
    }

    void expect_punct(std::string_view p)
    {
        if (!lex_.current().is_punct(p))
            lex_.fail("expected '" + std::string(p) + "', found '" + lex_.current().text + "'");
        lex_.take();
    }

    std::string expect_variable()
    {
        if (lex_.current().kind != TokenKind::Variable)
            lex_.fail("expected a variable, found '" + lex_.current().text + "'");
        return lex_.take().text;
    }

    std::string expect_string()
    {
        if (lex_.current().kind != TokenKind::String)
            lex_.fail("expected a quoted string, found '" + lex_.current().text + "'");
        return lex_.take().text;
    }

    std::string expect_attr_ref()
    {
        if (lex_.current().kind != TokenKind::AttrRef)
            lex_.fail("expected '@attribute', found '" + lex_.current().text + "'");
        return lex_.take().text;
    }

    const Binding &binding_of(const std::string &variable)
    {
        const auto it = bindings_.find(variable);
        if (it == bindings_.end())
            lex_.fail("variable $" + variable + " is not bound by the for clause");
        return it->second;
    }

    // for $a in [document(NAME)] //dimensionData/classification/Level[@node='X']/node, ...
    void parse_for_clause()
    {
        for (;;) {
            const std::string variable = expect_variable();
            expect_word("in");
            Binding binding = parse_collection_path();
            if (bindings_.count(variable) != 0)
                lex_.fail("variable $" + variable + " is bound twice");
            bindings_.emplace(variable, std::move(binding));
            if (!lex_.current().is_punct(","))
                break;
            lex_.take();
        }
    }

    Binding parse_collection_path()
    {
        if (lex_.current().is_word("document")) {
            lex_.take();
            expect_punct("(");
            if (lex_.current().kind == TokenKind::Word || lex_.current().kind == TokenKind::String)
                lex_.take();  // the document reference is informational
            else
                lex_.fail("expected a document reference");
            expect_punct(")");
        }
        expect_punct("/");
        expect_punct("/");

        const Token head = lex_.take();
        if (head.kind != TokenKind::Word)
            lex_.fail("expected a path step, found '" + head.text + "'");

        if (head.text == "dimensionData") {
            expect_punct("/");
            expect_step("classification");
            expect_punct("/");
            expect_step("Level");
            expect_punct("[");
            const std::string attr = expect_attr_ref();
            if (!iequals(attr, "node"))
                lex_.fail("Level predicate must select @node");
            expect_punct("=");
            Binding binding;
            binding.kind = Binding::Kind::Dimension;
            binding.dimension = expect_string();
            expect_punct("]");
            expect_punct("/");
            expect_step("node");
            return binding;
        }
        if (head.text == "CubeFacts") {
            expect_punct("/");
            expect_step("cube");
            expect_punct("/");
            expect_step("Cell");
            Binding binding;
            binding.kind = Binding::Kind::Fact;
            return binding;
        }
        lex_.fail("unrecognized collection path '//" + head.text + "/...'");
    }

    void expect_step(std::string_view step)
    {
        const Token t = lex_.take();
        if (t.kind != TokenKind::Word || t.text != step)
            throw ParseError("expected path step '" + std::string(step) + "', found '" + t.text + "'", t.line,
                             t.column);
    }

    // let $n := $a/attribute[@name='cust_city'], ...
    void parse_let_clause()
    {
        lex_.take();  // let
        for (;;) {
            expect_variable();
            expect_punct(":=");
            const std::string source = expect_variable();
            const Binding &binding = binding_of(source);
            if (binding.kind != Binding::Kind::Dimension)
                lex_.fail("let binds to $" + source + " which is not a dimension variable");
            expect_punct("/");
            expect_step("attribute");
            expect_punct("[");
            const std::string attr = expect_attr_ref();
            if (!iequals(attr, "name"))
                lex_.fail("let selector must use @name");
            expect_punct("=");
            expect_string();
            expect_punct("]");
            if (!lex_.current().is_punct(","))
                break;
            lex_.take();
        }
    }

    void parse_where_clause()
    {
        lex_.take();  // where
        for (;;) {
            parse_condition();
            if (lex_.current().is_word("or"))
                lex_.unsupported("disjunction ('or')");
            if (!lex_.current().is_word("and"))
                break;
            lex_.take();
        }
    }

    void parse_condition()
    {
        if (lex_.current().is_word("for") || lex_.current().is_word("some") || lex_.current().is_word("every"))
            lex_.unsupported("nested FLWOR expression");
        const std::string variable = expect_variable();
        const Binding &binding = binding_of(variable);
        expect_punct("/");
        const Token step = lex_.take();
        if (step.kind != TokenKind::Word)
            lex_.fail("expected a path step after $" + variable + "/");

        if (step.text == "attribute") {
            if (binding.kind != Binding::Kind::Dimension)
                throw ParseError("$" + variable + " is not a dimension variable", step.line, step.column);
            if (lex_.current().is_punct("["))
                parse_bracketed_predicate(variable, binding);
            else
                parse_split_predicate(variable, binding);
            return;
        }
        if (step.text == "dimension") {
            if (binding.kind != Binding::Kind::Fact)
                throw ParseError("$" + variable + " is not the fact variable", step.line, step.column);
            parse_join_condition();
            return;
        }
        throw ParseError("unrecognized condition on $" + variable + "/" + step.text, step.line, step.column);
    }

    // $a/attribute[@name='X'] or $a/attribute[@name='X',@value='Y']
    void parse_bracketed_predicate(const std::string &variable, const Binding &binding)
    {
        expect_punct("[");
        std::string name;
        std::optional<std::string> value;
        for (;;) {
            const std::string attr = expect_attr_ref();
            expect_punct("=");
            std::string literal = expect_string();
            if (iequals(attr, "name"))
                name = std::move(literal);
            else if (iequals(attr, "value"))
                value = std::move(literal);
            else
                lex_.fail("attribute selector must use @name or @value, found @" + attr);
            if (!lex_.current().is_punct(","))
                break;
            lex_.take();
        }
        expect_punct("]");
        if (name.empty())
            lex_.fail("attribute selector on $" + variable + " is missing @name");
        if (value.has_value())
            query_.predicates.push_back(Predicate{binding.dimension, name, *value});
        else
            pending_names_[variable].push_back(name);
    }

    // $a/attribute/@name='X'  |  $a/attribute/@value='Y'
    void parse_split_predicate(const std::string &variable, const Binding &binding)
    {
        expect_punct("/");
        const std::string selector = expect_attr_ref();
        expect_punct("=");
        std::string literal = expect_string();
        if (iequals(selector, "name")) {
            pending_names_[variable].push_back(std::move(literal));
            return;
        }
        if (iequals(selector, "value")) {
            auto &pending = pending_names_[variable];
            if (pending.empty())
                lex_.fail("@value condition on $" + variable + " has no preceding @name condition");
            query_.predicates.push_back(Predicate{binding.dimension, pending.front(), std::move(literal)});
            pending.erase(pending.begin());
            return;
        }
        lex_.fail("expected @name or @value, found @" + selector);
    }

    // $x/dimension/@node=$a/@id  |  $x/dimension/@id='customers'
    void parse_join_condition()
    {
        expect_punct("/");
        const std::string selector = expect_attr_ref();
        expect_punct("=");
        if (iequals(selector, "node")) {
            const std::string target = expect_variable();
            const Binding &binding = binding_of(target);
            if (binding.kind != Binding::Kind::Dimension)
                lex_.fail("join condition must reference a dimension variable, got $" + target);
            expect_punct("/");
            const std::string id = expect_attr_ref();
            if (!iequals(id, "id"))
                lex_.fail("join condition must compare against @id");
            return;
        }
        if (iequals(selector, "id")) {
            const std::string dimension = expect_string();
            for (const auto &[variable, binding] : bindings_)
                if (binding.kind == Binding::Kind::Dimension && iequals(binding.dimension, dimension))
                    return;
            lex_.fail("join names dimension '" + dimension + "' which no for binding declares");
        }
        lex_.fail("expected @node or @id on the fact dimension step");
    }

    void parse_group_by()
    {
        lex_.take();  // group
        expect_word("by");
        expect_punct("(");
        for (;;) {
            query_.group_by.push_back(expect_attr_ref());
            if (!lex_.current().is_punct(","))
                break;
            lex_.take();
        }
        expect_punct(")");
    }

    void parse_return_clause()
    {
        if (lex_.current().is_word("for"))
            lex_.unsupported("nested FLWOR expression");
        for (;;) {
            if (lex_.current().kind == TokenKind::AttrRef) {
                const Token t = lex_.take();
                bool grouped = false;
                for (const std::string &g : query_.group_by)
                    grouped = grouped || iequals(g, t.text);
                if (!grouped)
                    throw ParseError("return references @" + t.text + " which is not in the group by clause", t.line,
                                     t.column);
            } else if (lex_.current().kind == TokenKind::Word) {
                const Token op_token = lex_.take();
                if (iequals(op_token.text, "for"))
                    lex_.unsupported("nested FLWOR expression");
                AggregateOp op;
                try {
                    op = aggregate_op_from(op_token.text);
                } catch (const ValidationError &) {
                    throw ParseError("unknown aggregate '" + op_token.text + "'", op_token.line, op_token.column);
                }
                expect_punct("(");
                const Token measure = lex_.take();
                if (measure.kind != TokenKind::Word)
                    throw ParseError("expected a measure name", measure.line, measure.column);
                expect_punct(")");
                query_.aggregations.push_back(Aggregate{op, measure.text});
            } else {
                lex_.fail("expected '@attribute' or an aggregate call in the return clause");
            }
            if (!lex_.current().is_punct(","))
                break;
            lex_.take();
        }
        if (query_.aggregations.empty())
            throw ValidationError("return clause must contain at least one aggregate call");
    }

    void finish_pending_predicates()
    {
        for (const auto &[variable, names] : pending_names_)
            if (!names.empty())
                throw ValidationError("predicate on $" + variable + " names attribute '" + names.front()
                                      + "' but no @value condition follows");
    }

    Lexer lex_;
    DecisionQuery query_;
    std::map<std::string, Binding> bindings_;
    std::map<std::string, std::vector<std::string>> pending_names_;
};

} // namespace

DecisionQuery parse_query(std::string_view text)
{
    return QueryParser(text).parse();
}

std::vector<DecisionQuery> parse_workload(std::string_view text)
{
    struct Chunk
    {
        std::string body;
        std::string id;
        std::size_t first_line = 1;
    };

    std::vector<Chunk> chunks(1);
    chunks.back().first_line = 1;
    std::size_t line_number = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_number;
        const std::string_view trimmed = trim(line);
        if (trimmed == "---") {
            chunks.emplace_back();
            chunks.back().first_line = line_number + 1;
            continue;
        }
        if (trimmed.starts_with("--")) {
            std::string_view comment = trim(trimmed.substr(2));
            if (comment.starts_with("id:"))
                chunks.back().id = std::string(trim(comment.substr(3)));
            if (chunks.back().body.empty())
                ++chunks.back().first_line;  // leading comments precede the body
            continue;
        }
        if (chunks.back().body.empty() && trimmed.empty()) {
            ++chunks.back().first_line;
            continue;
        }
        chunks.back().body += line;
        chunks.back().body += '\n';
    }

    std::vector<DecisionQuery> workload;
    std::set<std::string> seen_ids;
    for (const Chunk &chunk : chunks) {
        if (trim(chunk.body).empty()) {
            if (!chunk.id.empty())
                throw ValidationError("workload declares id '" + chunk.id + "' for an empty query");
            continue;
        }
        std::string id = chunk.id.empty() ? "q" + std::to_string(workload.size() + 1) : chunk.id;
        try {
            DecisionQuery query = parse_query(chunk.body);
            query.id = id;
            workload.push_back(std::move(query));
        } catch (const ParseError &error) {
            // Rebase the position onto workload file coordinates.
            throw ParseError("query '" + id + "': " + error.message(),
                             chunk.first_line + error.line() - 1, error.column());
        } catch (const Error &error) {
            throw ValidationError("query '" + id + "': " + std::string(error.what()));
        }
        if (!seen_ids.insert(fold(id)).second)
            throw ValidationError("workload declares duplicate query id '" + id + "'");
    }
    return workload;
}

std::set<std::string> representative_attributes(const DecisionQuery &query)
{
    std::set<std::string> attributes;
    for (const Predicate &predicate : query.predicates)
        attributes.insert(fold(predicate.attribute));
    for (const std::string &attribute : query.group_by)
        attributes.insert(fold(attribute));
    return attributes;
}

} // namespace xmv
