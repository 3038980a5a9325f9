#include "ehaudit/eh_model.hpp"

#include "ehaudit/java_lexer.hpp"

#include <algorithm>
#include <cassert>

namespace ehaudit {

const char* to_string(RegionClass c) {
    switch (c) {
        case RegionClass::TRY: return "TRY";
        case RegionClass::CATCH: return "CATCH";
        case RegionClass::FINALLY: return "FINALLY";
        case RegionClass::THROW: return "THROW";
        case RegionClass::METHOD_WITH_THROWS: return "METHOD_WITH_THROWS";
        case RegionClass::NONE: return "NONE";
    }
    return "?";
}

namespace {

// Structural scanner over the token stream. It understands just enough of
// the grammar to place try/catch/finally/throw/method/type-declaration
// spans: brace matching, member headers, anonymous class bodies, lambdas
// and try-with-resources. Everything else is walked token by token.
class RegionParser {
public:
    RegionParser(std::string_view src, const std::string& file_id)
        : src_(src), file_(file_id), toks_(lex_java(src, file_id)) {
        out_.file_id = file_id;
    }

    EhRegionMap run() {
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("package") || t.is("import")) {
                skip_to_semi();
            } else if (t.is("@")) {
                skip_annotation();
            } else if (is_type_decl_keyword()) {
                parse_type_decl();
            } else {
                advance();
            }
        }
        compute_trailing_runs();
        return std::move(out_);
    }

private:
    std::string_view src_;
    const std::string& file_;
    std::vector<Token> toks_;
    std::size_t p_ = 0;

    EhRegionMap out_;
    std::vector<std::vector<CallSite>*> capture_;
    std::vector<int> method_stack_;

    bool at_end() const { return toks_[p_].kind == TokKind::End; }
    const Token& cur() const { return toks_[p_]; }
    const Token& peek(std::size_t k = 1) const {
        std::size_t i = std::min(p_ + k, toks_.size() - 1);
        return toks_[i];
    }
    const Token& prev() const { return toks_[p_ == 0 ? 0 : p_ - 1]; }
    void advance() {
        if (!at_end()) ++p_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(file_, cur().line, msg);
    }

    static SourceSpan span_between(const std::string& file, const Token& a, const Token& b) {
        SourceSpan s;
        s.file_id = file;
        s.start_line = a.line;
        s.start_col = a.col;
        s.end_line = b.line;
        s.end_col = b.col + static_cast<int>(b.text.size()) - 1;
        s.begin_offset = a.offset;
        s.end_offset = b.end_offset;
        return s;
    }

    bool is_type_decl_keyword() const {
        const Token& t = cur();
        if (t.is("class") || t.is("interface") || t.is("enum")) return true;
        // contextual: record Foo(...) { ... }
        if (t.is("record") && peek().kind == TokKind::Identifier && !is_java_keyword(peek().text) &&
            (peek(2).is("(") || peek(2).is("<")))
            return true;
        return false;
    }

    static bool is_modifier(std::string_view s) {
        return s == "public" || s == "private" || s == "protected" || s == "static" ||
               s == "final" || s == "abstract" || s == "synchronized" || s == "native" ||
               s == "strictfp" || s == "transient" || s == "volatile" || s == "default" ||
               s == "sealed";
    }

    void skip_to_semi() {
        while (!at_end() && !cur().is(";")) advance();
        advance();
    }

    void skip_annotation() {
        advance(); // '@'
        if (cur().is("interface")) { // @interface declaration
            parse_type_decl();
            return;
        }
        while (cur().kind == TokKind::Identifier) {
            advance();
            if (cur().is(".")) advance();
            else break;
        }
        if (cur().is("(")) skip_balanced("(", ")");
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        assert(cur().is(open));
        int line = cur().line;
        int depth = 0;
        while (!at_end()) {
            if (cur().is(open)) ++depth;
            else if (cur().is(close)) {
                --depth;
                if (depth == 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
        throw ParseError(file_, line, std::string("unbalanced '") + std::string(open) + "'");
    }

    // Skips <...> allowing nesting; assumes we sit on '<' used as a generic
    // bracket (declaration sites only).
    void skip_generics() {
        int depth = 0;
        while (!at_end()) {
            if (cur().is("<")) ++depth;
            else if (cur().is(">")) {
                --depth;
                if (depth <= 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
    }

    // Reads a dotted type name ("java.io.IOException"), returning the text as
    // written and the covering span. Cursor must be on the first identifier.
    std::pair<std::string, SourceSpan> read_qualified_name() {
        const Token& first = cur();
        std::string name(cur().text);
        const Token* last = &cur();
        advance();
        while (cur().is(".") && peek().kind == TokKind::Identifier) {
            name += ".";
            advance();
            name += std::string(cur().text);
            last = &cur();
            advance();
        }
        if (cur().is("<")) skip_generics();
        return {name, span_between(file_, first, *last)};
    }

    void record_call(const std::string& name, int arity) {
        if (capture_.empty()) return;
        CallSite c{name, arity};
        for (auto* frame : capture_) frame->push_back(c);
    }

    // Counts top-level commas between the '(' at index `open` and its match.
    int arity_at(std::size_t open) const {
        int paren = 0, brace = 0, bracket = 0;
        int commas = 0;
        bool any = false;
        for (std::size_t i = open; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (t.kind == TokKind::End) break;
            if (t.is("(")) ++paren;
            else if (t.is(")")) {
                --paren;
                if (paren == 0) break;
            } else if (t.is("{")) ++brace;
            else if (t.is("}")) --brace;
            else if (t.is("[")) ++bracket;
            else if (t.is("]")) --bracket;
            else if (t.is(",") && paren == 1 && brace == 0 && bracket == 0) ++commas;
            if (paren >= 1 && !(paren == 1 && t.is("("))) any = true;
        }
        if (!any) return 0;
        return commas + 1;
    }

    void parse_type_decl() {
        if (cur().is("record")) advance();
        else advance(); // class/interface/enum
        bool is_class = prev().is("class");
        TypeDecl decl;
        decl.is_class = is_class;
        if (cur().kind != TokKind::Identifier) {
            // malformed; resynchronise at next brace
            while (!at_end() && !cur().is("{")) advance();
            if (!at_end()) parse_class_body("");
            return;
        }
        decl.name = std::string(cur().text);
        advance();
        if (cur().is("<")) skip_generics();
        if (cur().is("(")) skip_balanced("(", ")"); // record header
        while (!at_end() && !cur().is("{") && !cur().is(";")) {
            if (cur().is("extends")) {
                advance();
                if (cur().kind == TokKind::Identifier) {
                    auto [name, span] = read_qualified_name();
                    (void)span;
                    if (is_class && decl.extends.empty()) decl.extends = name;
                    continue;
                }
            }
            advance();
        }
        out_.type_decls.push_back(decl);
        if (cur().is("{")) parse_class_body(decl.name);
        else advance();
    }

    void parse_class_body(const std::string& type_name) {
        assert(cur().is("{"));
        advance();
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("}")) {
                advance();
                return;
            }
            if (t.is(";") || t.is(",")) {
                advance();
                continue;
            }
            if (t.is("@")) {
                skip_annotation();
                continue;
            }
            if (is_type_decl_keyword()) {
                parse_type_decl();
                continue;
            }
            if (t.is("static") && peek().is("{")) {
                advance();
                parse_code_block();
                continue;
            }
            if (t.is("{")) {
                parse_code_block();
                continue;
            }
            if (t.kind == TokKind::Identifier && is_modifier(t.text)) {
                advance();
                continue;
            }
            parse_member(type_name);
        }
        fail("unterminated class body");
    }

    // One field or method/constructor declaration. Cursor sits on the first
    // header token (after modifiers/annotations).
    void parse_member(const std::string& type_name) {
        std::size_t header_start = p_;
        if (cur().is("<")) skip_generics(); // method type parameters
        int angle = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("<")) {
                ++angle;
            } else if (t.is(">")) {
                --angle;
            } else if (angle == 0 && t.is("(")) {
                const Token& name_tok = prev();
                bool plausible_method = name_tok.kind == TokKind::Identifier &&
                                        !is_java_keyword(name_tok.text) &&
                                        (p_ - header_start >= 2 ||
                                         std::string(name_tok.text) == type_name);
                if (plausible_method) {
                    parse_method(header_start, std::string(name_tok.text));
                } else {
                    // enum constant with arguments / unrecognised member
                    skip_balanced("(", ")");
                    if (cur().is("{")) parse_class_body("");
                }
                return;
            } else if (angle == 0 && (t.is("=") || t.is(";"))) {
                if (t.is("=")) {
                    advance();
                    scan_expression_until_semi();
                } else {
                    advance();
                }
                return;
            } else if (angle == 0 && t.is("{")) {
                // enum constant body without arguments
                parse_class_body("");
                return;
            } else if (t.is("}")) {
                return; // let caller close the body
            }
            advance();
        }
    }

    void parse_method(std::size_t header_start, std::string name) {
        MethodInfo m;
        m.name = std::move(name);
        m.declared_return_is_void = p_ >= 2 && toks_[p_ - 2].is("void");
        const Token& first = toks_[header_start];

        std::size_t open = p_;
        m.arity = arity_at(open);
        skip_balanced("(", ")");
        m.params_end_offset = prev().end_offset;
        const Token* sig_last = &prev();

        while (cur().is("[") ) { // legacy array return dims: int foo()[]
            advance();
            if (cur().is("]")) advance();
        }
        if (cur().is("throws")) {
            const Token& kw = cur();
            advance();
            const Token* last = &kw;
            while (cur().kind == TokKind::Identifier) {
                auto [tname, tspan] = read_qualified_name();
                m.throws_types.push_back(tname);
                last = &toks_[p_ - 1];
                if (cur().is(",")) {
                    advance();
                    continue;
                }
                break;
            }
            m.throws_clause_span = span_between(file_, kw, *last);
            sig_last = last;
        }
        m.signature_span = span_between(file_, first, *sig_last);

        int index = static_cast<int>(out_.methods.size());
        out_.methods.push_back(std::move(m));

        if (cur().is("default")) { // annotation member default value
            advance();
            scan_expression_until_semi();
            out_.methods[index].full_span = out_.methods[index].signature_span;
            return;
        }
        if (cur().is(";")) {
            advance();
            out_.methods[index].full_span = out_.methods[index].signature_span;
            return;
        }
        if (!cur().is("{")) {
            // resynchronise; treat as abstract
            out_.methods[index].full_span = out_.methods[index].signature_span;
            return;
        }
        const Token& body_open = cur();
        method_stack_.push_back(index);
        std::size_t close_off = parse_code_block();
        method_stack_.pop_back();

        MethodInfo& stored = out_.methods[index];
        SourceSpan body = span_between(file_, body_open, toks_[p_ - 1]);
        (void)close_off;
        stored.body_span = body;
        stored.full_span = stored.signature_span;
        stored.full_span.end_line = body.end_line;
        stored.full_span.end_col = body.end_col;
        stored.full_span.end_offset = body.end_offset;
    }

    // Statement/expression context. Cursor on '{'; returns offset of the
    // matching '}' after consuming it.
    std::size_t parse_code_block() {
        assert(cur().is("{"));
        int line = cur().line;
        advance();
        std::vector<std::size_t> direct_tries;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("}")) {
                std::size_t close = cur().offset;
                for (std::size_t ti : direct_tries)
                    out_.try_blocks[ti].enclosing_block_end_offset = close;
                advance();
                return close;
            }
            if (t.is("try")) {
                direct_tries.push_back(parse_try_statement());
                continue;
            }
            if (t.is("throw")) {
                parse_throw_statement();
                continue;
            }
            if (t.is("@")) {
                skip_annotation();
                continue;
            }
            if (t.is("new") && !prev().is("::")) {
                parse_new_expression();
                continue;
            }
            if (t.is("class") || t.is("interface") || t.is("enum")) {
                parse_type_decl(); // local class
                continue;
            }
            if (t.is("{")) {
                parse_code_block();
                continue;
            }
            if (t.kind == TokKind::Identifier && !is_java_keyword(t.text) && peek().is("(") &&
                !prev().is("::")) {
                record_call(std::string(t.text), arity_at(p_ + 1));
                advance();
                continue;
            }
            advance();
        }
        throw ParseError(file_, line, "unbalanced '{'");
    }

    // Field initialisers and annotation defaults: walk to ';' at depth 0,
    // still descending into anonymous classes and lambda bodies.
    void scan_expression_until_semi() {
        int paren = 0, bracket = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is(";") && paren == 0 && bracket == 0) {
                advance();
                return;
            }
            if (t.is("(")) ++paren;
            else if (t.is(")")) {
                if (paren == 0) return; // enum constant argument edge
                --paren;
            } else if (t.is("[")) ++bracket;
            else if (t.is("]")) --bracket;
            else if (t.is("new") && !prev().is("::")) {
                parse_new_expression();
                continue;
            } else if (t.is("{")) {
                if (prev().is("->")) parse_code_block();
                else scan_brace_initializer();
                continue;
            } else if (t.is("}") && paren == 0 && bracket == 0) {
                return; // missing semicolon; don't eat the block close
            } else if (t.kind == TokKind::Identifier && !is_java_keyword(t.text) &&
                       peek().is("(") && !prev().is("::")) {
                record_call(std::string(t.text), arity_at(p_ + 1));
            }
            advance();
        }
    }

    // Array initialiser { a, b, ... }: elements may contain anything.
    void scan_brace_initializer() {
        assert(cur().is("{"));
        int line = cur().line;
        advance();
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("}")) {
                advance();
                return;
            }
            if (t.is("new") && !prev().is("::")) {
                parse_new_expression();
                continue;
            }
            if (t.is("{")) {
                if (prev().is("->")) parse_code_block();
                else scan_brace_initializer();
                continue;
            }
            if (t.kind == TokKind::Identifier && !is_java_keyword(t.text) && peek().is("(") &&
                !prev().is("::")) {
                record_call(std::string(t.text), arity_at(p_ + 1));
            }
            advance();
        }
        throw ParseError(file_, line, "unbalanced '{' in initializer");
    }

    // Object/array creation. Consumes the whole creation expression and
    // descends into anonymous class bodies.
    void parse_new_expression() {
        assert(cur().is("new"));
        advance();
        if (cur().kind != TokKind::Identifier) return;
        auto [qname, span] = read_qualified_name();
        (void)span;
        std::string simple = qname.substr(qname.rfind('.') + 1);
        if (cur().is("[")) {
            // array creation: new T[..][..] { ... }?
            while (cur().is("[")) {
                skip_balanced("[", "]");
            }
            if (cur().is("{")) scan_brace_initializer();
            return;
        }
        if (!cur().is("(")) return;
        record_call(simple, arity_at(p_));
        consume_args_recording();
        if (cur().is("{")) parse_class_body(""); // anonymous class
    }

    // Consumes a balanced (...) while still recording calls/creations inside.
    void consume_args_recording() {
        assert(cur().is("("));
        int line = cur().line;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("(")) {
                ++depth;
                advance();
                continue;
            }
            if (t.is(")")) {
                --depth;
                advance();
                if (depth == 0) return;
                continue;
            }
            if (t.is("new") && !prev().is("::")) {
                parse_new_expression();
                continue;
            }
            if (t.is("{")) {
                if (prev().is("->")) parse_code_block();
                else scan_brace_initializer();
                continue;
            }
            if (t.kind == TokKind::Identifier && !is_java_keyword(t.text) && peek().is("(") &&
                !prev().is("::")) {
                record_call(std::string(t.text), arity_at(p_ + 1));
            }
            advance();
        }
        throw ParseError(file_, line, "unbalanced '(' in arguments");
    }

    void parse_throw_statement() {
        assert(cur().is("throw"));
        const Token& first = cur();
        advance();
        bool type_recorded = false;
        int paren = 0, bracket = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is(";") && paren == 0 && bracket == 0) {
                SourceSpan s = span_between(file_, first, cur());
                out_.throw_spans.push_back(s);
                advance();
                return;
            }
            if (t.is("(")) ++paren;
            else if (t.is(")")) --paren;
            else if (t.is("[")) ++bracket;
            else if (t.is("]")) --bracket;

            if (t.is("new") && !prev().is("::")) {
                std::size_t before = p_;
                bool top_level = paren == 0 && bracket == 0;
                parse_new_expression();
                if (top_level && !type_recorded && !method_stack_.empty()) {
                    // re-lex the type name we just passed
                    const Token& nt = toks_[before + 1];
                    if (nt.kind == TokKind::Identifier) {
                        std::string qn(nt.text);
                        std::size_t q = before + 2;
                        while (toks_[q].is(".") && toks_[q + 1].kind == TokKind::Identifier) {
                            qn += ".";
                            qn += std::string(toks_[q + 1].text);
                            q += 2;
                        }
                        out_.methods[method_stack_.back()].thrown_new_types.push_back(qn);
                        type_recorded = true;
                    }
                }
                continue;
            }
            if (t.is("{")) {
                if (prev().is("->")) parse_code_block();
                else scan_brace_initializer();
                continue;
            }
            if (t.kind == TokKind::Identifier && !is_java_keyword(t.text) && peek().is("(") &&
                !prev().is("::")) {
                record_call(std::string(t.text), arity_at(p_ + 1));
            }
            advance();
        }
        throw ParseError(file_, first.line, "unterminated throw statement");
    }

    std::size_t parse_try_statement() {
        assert(cur().is("try"));
        const Token& kw = cur();
        TryBlockInfo info;
        info.enclosing_method_index = method_stack_.empty() ? -1 : method_stack_.back();
        advance();

        capture_.push_back(&info.calls_in_body);
        if (cur().is("(")) {
            info.resources_present = true;
            consume_args_recording(); // resource header; calls captured
        }
        if (!cur().is("{")) {
            capture_.pop_back();
            fail("expected '{' after try");
        }
        info.body_open_offset = cur().offset;
        const Token& body_open = cur();
        info.body_close_offset = parse_code_block();
        capture_.pop_back();

        info.try_body_span = span_between(file_, kw, toks_[p_ - 1]);
        (void)body_open;
        const Token* stmt_last = &toks_[p_ - 1];

        while (cur().is("catch")) {
            const Token& ckw = cur();
            CatchClause clause;
            advance();
            if (!cur().is("(")) fail("expected '(' after catch");
            advance();
            if (cur().is("final")) advance();
            while (cur().is("@")) skip_annotation();
            while (cur().kind == TokKind::Identifier) {
                auto [tname, tspan] = read_qualified_name();
                clause.exception_types.push_back(tname);
                clause.type_spans.push_back(tspan);
                if (cur().is("|")) {
                    advance();
                    continue;
                }
                if (cur().kind == TokKind::Identifier) {
                    clause.parameter_name = std::string(cur().text);
                    advance();
                }
                break;
            }
            if (cur().is(")")) advance();
            else fail("malformed catch header");
            if (!cur().is("{")) fail("expected '{' after catch header");
            const Token& copen = cur();
            parse_code_block();
            clause.body_span = span_between(file_, copen, toks_[p_ - 1]);
            clause.clause_span = span_between(file_, ckw, toks_[p_ - 1]);
            stmt_last = &toks_[p_ - 1];
            info.catch_clauses.push_back(std::move(clause));
        }

        if (cur().is("finally")) {
            const Token& fkw = cur();
            advance();
            if (!cur().is("{")) fail("expected '{' after finally");
            parse_code_block();
            info.finally_span = span_between(file_, fkw, toks_[p_ - 1]);
            stmt_last = &toks_[p_ - 1];
        }

        info.statement_span = span_between(file_, kw, *stmt_last);
        out_.try_blocks.push_back(std::move(info));
        return out_.try_blocks.size() - 1;
    }

    std::size_t token_index_at(std::size_t offset) const {
        std::size_t lo = 0, hi = toks_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (toks_[mid].offset < offset) lo = mid + 1;
            else hi = mid;
        }
        return lo;
    }

    static bool is_primitive(std::string_view s) {
        return s == "int" || s == "long" || s == "short" || s == "byte" || s == "char" ||
               s == "boolean" || s == "float" || s == "double";
    }

    // Lexical collection of names the try body declares or assigns.
    std::set<std::string> collect_defined_names(const TryBlockInfo& tb) const {
        std::set<std::string> defined;
        std::size_t i = token_index_at(tb.try_body_span.begin_offset);
        for (; i < toks_.size() && toks_[i].offset <= tb.body_close_offset; ++i) {
            const Token& t = toks_[i];
            if (t.kind != TokKind::Identifier || is_java_keyword(t.text)) continue;
            const Token& next = toks_[std::min(i + 1, toks_.size() - 1)];
            const Token& before = toks_[i == 0 ? 0 : i - 1];
            bool assigned = next.is("=") || next.is("+=") || next.is("-=") || next.is("*=") ||
                            next.is("/=") || next.is("%=") || next.is("&=") || next.is("|=") ||
                            next.is("^=") || next.is("++") || next.is("--") || before.is("++") ||
                            before.is("--");
            bool typed_prev = (before.kind == TokKind::Identifier && !is_java_keyword(before.text)) ||
                              is_primitive(before.text) || before.is(">") || before.is("]");
            bool declared = typed_prev && (next.is(";") || next.is(",") || next.is(":") ||
                                           next.is(")") || next.is("="));
            if (assigned || declared) defined.insert(std::string(t.text));
        }
        return defined;
    }

    // One sibling statement starting at token i; handles ';'-terminated
    // statements, brace blocks and their else/catch/finally/while tails.
    std::optional<std::pair<std::size_t, std::size_t>> scan_statement_unit(
        std::size_t i, std::size_t limit_offset) const {
        if (i >= toks_.size() || toks_[i].kind == TokKind::End) return std::nullopt;
        if (toks_[i].offset >= limit_offset || toks_[i].is("}")) return std::nullopt;
        std::size_t start = i;
        int paren = 0, bracket = 0, brace = 0;
        while (i < toks_.size() && toks_[i].kind != TokKind::End &&
               toks_[i].offset < limit_offset) {
            const Token& t = toks_[i];
            if (t.is("(")) ++paren;
            else if (t.is(")")) --paren;
            else if (t.is("[")) ++bracket;
            else if (t.is("]")) --bracket;
            else if (t.is("{")) ++brace;
            else if (t.is("}")) {
                if (brace == 0) return std::nullopt;
                --brace;
                if (brace == 0 && paren == 0 && bracket == 0) {
                    const Token& nx = toks_[std::min(i + 1, toks_.size() - 1)];
                    if (nx.is("else") || nx.is("catch") || nx.is("finally") || nx.is("while")) {
                        ++i;
                        continue;
                    }
                    if (nx.is(";")) return {{start, i + 1}};
                    return {{start, i}};
                }
            } else if (t.is(";") && paren == 0 && bracket == 0 && brace == 0) {
                return {{start, i}};
            }
            ++i;
        }
        return std::nullopt;
    }

    void compute_trailing_runs() {
        for (auto& tb : out_.try_blocks) {
            tb.body_defined_names = collect_defined_names(tb);
            if (tb.enclosing_block_end_offset <= tb.statement_span.end_offset) continue;

            std::size_t i = token_index_at(tb.statement_span.end_offset);
            std::optional<std::size_t> run_begin;
            std::size_t run_end = 0;
            while (true) {
                auto unit = scan_statement_unit(i, tb.enclosing_block_end_offset);
                if (!unit) break;
                bool qualifies = false;
                for (std::size_t j = unit->first; j <= unit->second && !qualifies; ++j) {
                    const Token& t = toks_[j];
                    qualifies = t.kind == TokKind::Identifier && !is_java_keyword(t.text) &&
                                tb.body_defined_names.count(std::string(t.text)) > 0;
                }
                if (!qualifies) break;
                if (!run_begin) run_begin = unit->first;
                run_end = unit->second;
                i = unit->second + 1;
            }
            if (run_begin)
                tb.trailing_use_run = span_between(file_, toks_[*run_begin], toks_[run_end]);
        }
    }
};

} // namespace

EhRegionMap extract_eh_regions(std::string_view source_text, const std::string& file_id) {
    RegionParser parser(source_text, file_id);
    return parser.run();
}

std::set<RegionClass> classify_line(const EhRegionMap& map, int line) {
    std::set<RegionClass> result;
    for (const auto& tb : map.try_blocks) {
        if (tb.try_body_span.contains_line(line)) result.insert(RegionClass::TRY);
        for (const auto& c : tb.catch_clauses)
            if (c.clause_span.contains_line(line)) result.insert(RegionClass::CATCH);
        if (tb.finally_span && tb.finally_span->contains_line(line))
            result.insert(RegionClass::FINALLY);
    }
    for (const auto& ts : map.throw_spans)
        if (ts.contains_line(line)) result.insert(RegionClass::THROW);
    for (const auto& m : map.methods)
        if (!m.throws_types.empty() && m.full_span.contains_line(line))
            result.insert(RegionClass::METHOD_WITH_THROWS);
    if (result.empty()) result.insert(RegionClass::NONE);
    return result;
}

} // namespace ehaudit
