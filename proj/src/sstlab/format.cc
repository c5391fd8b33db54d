#include "sstlab/format.hh"

#include <algorithm>
#include <cctype>
#include <map>

#include "sstlab/error.hh"

namespace sstlab {

namespace {

struct Token {
    enum class Kind { Word, String, Punct, End };
    Kind kind{Kind::End};
    std::string text;
    std::size_t line{0};
    std::size_t col{0};
};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.[]@~'$()*").find(c) != std::string_view::npos;
}

std::string at(std::size_t line, std::size_t col) { return std::to_string(line) + ":" + std::to_string(col) + ": "; }

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') { advance(1); }
        } else if (c == '"') {
            const std::size_t close = text.find('"', i + 1);
            if (close == std::string::npos || text.find('\n', i) < close) {
                fail(ErrorKind::Parse, at(line, col) + "unterminated string");
            }
            out.push_back({Token::Kind::String, text.substr(i, close - i + 1), line, col});
            advance(close - i + 1);
        } else if (text.compare(i, 2, ":=") == 0 || text.compare(i, 2, "->") == 0) {
            out.push_back({Token::Kind::Punct, text.substr(i, 2), line, col});
            advance(2);
        } else if (std::string_view(";{}:=").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
            advance(1);
        } else if (word_char(c)) {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j])) { ++j; }
            out.push_back({Token::Kind::Word, text.substr(i, j - i), line, col});
            advance(j - i);
        } else {
            fail(ErrorKind::Parse, at(line, col) + "unexpected character '" + std::string(1, c) + "'");
        }
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

bool is_identifier(const std::string& s) {
    return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_state_name(const std::string& s) {
    return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) { return c == '$' || c == '(' || c == ')' || c == '*'; });
}

bool is_letter_token(const std::string& s) {
    return s.size() == 1 && (std::islower(static_cast<unsigned char>(s[0])) || std::isdigit(static_cast<unsigned char>(s[0])));
}

struct StateDecl {
    Token name;
    bool initial{false};
    bool final{false};
    bool has_body{false};
    std::optional<std::string> origin;
    std::vector<std::pair<Token, Token>> values;  ///< variable, language
};

struct TransDecl {
    Token source, target, label;
    std::vector<std::pair<Token, std::vector<Token>>> assignments;
};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    SstDocument run() {
        while (peek().kind != Token::Kind::End) { statement(); }
        return resolve();
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_{0};

    std::optional<Token> input_alphabet_, output_alphabet_, registers_kw_, output_kw_;
    std::string input_letters_, output_letters_;
    std::vector<Token> registers_;
    Token output_;
    std::optional<std::size_t> alpha_;
    std::vector<StateDecl> states_;
    std::vector<TransDecl> trans_;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] static void error(const Token& t, const std::string& what) { fail(ErrorKind::Parse, at(t.line, t.col) + what); }

    static std::string show(const Token& t) { return t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"; }

    void expect(const std::string& punct) {
        const Token t = next();
        if (t.kind != Token::Kind::Punct || t.text != punct) { error(t, "expected '" + punct + "', found " + show(t)); }
    }

    bool accept(const std::string& punct) {
        if (peek().kind == Token::Kind::Punct && peek().text == punct) {
            ++pos_;
            return true;
        }
        return false;
    }

    Token word(const std::string& what) {
        const Token t = next();
        if (t.kind != Token::Kind::Word) { error(t, "expected " + what + ", found " + show(t)); }
        return t;
    }

    void once(std::optional<Token>& slot, const Token& kw) {
        if (slot) { error(kw, "duplicate '" + kw.text + "' declaration"); }
        slot = kw;
    }

    void statement() {
        const Token kw = word("a declaration");
        if (kw.text == "alphabet") {
            const Token which = word("'input' or 'output'");
            if (which.text != "input" && which.text != "output") { error(which, "expected 'input' or 'output'"); }
            const bool input = which.text == "input";
            once(input ? input_alphabet_ : output_alphabet_, kw);
            expect(":");
            std::string& letters = input ? input_letters_ : output_letters_;
            while (!accept(";")) {
                const Token l = word("a letter");
                if (!(is_letter_token(l.text) || (input && l.text == "$"))) { error(l, "bad letter " + show(l)); }
                letters += l.text;
            }
        } else if (kw.text == "registers") {
            once(registers_kw_, kw);
            expect(":");
            while (!accept(";")) {
                const Token r = word("a register name");
                if (!is_identifier(r.text)) { error(r, "bad register name " + show(r)); }
                registers_.push_back(r);
            }
        } else if (kw.text == "output") {
            once(output_kw_, kw);
            expect(":");
            output_ = word("a register name");
            expect(";");
        } else if (kw.text == "alpha") {
            if (alpha_) { error(kw, "duplicate 'alpha' declaration"); }
            expect(":");
            const Token n = word("a number");
            if (n.text.empty() || !std::all_of(n.text.begin(), n.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                error(n, "expected a number, found " + show(n));
            }
            alpha_ = std::stoul(n.text);
            expect(";");
        } else if (kw.text == "state") {
            state();
        } else if (kw.text == "trans") {
            transition();
        } else {
            error(kw, "unknown declaration " + show(kw));
        }
    }

    void state() {
        StateDecl d;
        d.name = word("a state name");
        if (!is_state_name(d.name.text)) { error(d.name, "bad state name " + show(d.name)); }
        while (peek().kind == Token::Kind::Word) {
            const Token flag = next();
            if (flag.text == "initial") {
                d.initial = true;
            } else if (flag.text == "final") {
                d.final = true;
            } else {
                error(flag, "expected 'initial' or 'final', found " + show(flag));
            }
        }
        if (accept("{")) {
            d.has_body = true;
            while (!accept("}")) {
                const Token key = word("'origin' or a variable");
                if (key.text == "origin" && !(peek().kind == Token::Kind::Punct && peek().text == "=")) {
                    if (d.origin) { error(key, "duplicate origin"); }
                    d.origin = word("a state name").text;
                } else {
                    expect("=");
                    const Token value = next();
                    if (value.kind != Token::Kind::Word && value.kind != Token::Kind::String) {
                        error(value, "expected a language, found " + show(value));
                    }
                    d.values.emplace_back(key, value);
                }
                expect(";");
            }
            accept(";");
        } else {
            expect(";");
        }
        states_.push_back(std::move(d));
    }

    void transition() {
        TransDecl d;
        d.source = word("a state name");
        expect("->");
        d.target = word("a state name");
        const Token on = word("'on'");
        if (on.text != "on") { error(on, "expected 'on', found " + show(on)); }
        d.label = word("an input letter");
        if (!is_letter_token(d.label.text) && d.label.text != "$") { error(d.label, "bad input letter " + show(d.label)); }
        expect("{");
        while (!accept("}")) {
            const Token lhs = word("a register name");
            expect(":=");
            std::vector<Token> rhs;
            while (!accept(";")) { rhs.push_back(word("a register or letter")); }
            d.assignments.emplace_back(lhs, std::move(rhs));
        }
        accept(";");
        trans_.push_back(std::move(d));
    }

    SstDocument resolve() {
        const Token& end = toks_.back();
        if (!input_alphabet_) { error(end, "missing 'alphabet input' declaration"); }
        if (!output_alphabet_) { error(end, "missing 'alphabet output' declaration"); }
        if (!registers_kw_) { error(end, "missing 'registers' declaration"); }
        if (!output_kw_) { error(end, "missing 'output' declaration"); }

        SstDocument doc;
        Sst& sst = doc.machine;
        sst.input_alphabet = input_letters_;
        sst.output_alphabet = output_letters_;
        std::map<std::string, std::size_t> reg_index;
        for (const Token& r : registers_) {
            if (!reg_index.emplace(r.text, sst.registers.size()).second) { error(r, "duplicate register " + show(r)); }
            sst.registers.push_back(r.text);
        }
        const auto out = reg_index.find(output_.text);
        if (out == reg_index.end()) { error(output_, "output register " + show(output_) + " is not declared"); }
        sst.output_register = out->second;

        for (const StateDecl& d : states_) {
            if (sst.find_state(d.name.text)) { error(d.name, "duplicate state " + show(d.name)); }
            sst.add_state(d.name.text, d.initial, d.final);
        }
        const std::size_t m = sst.num_registers();
        for (const TransDecl& d : trans_) {
            const auto src = sst.find_state(d.source.text);
            if (!src) { error(d.source, "undeclared state " + show(d.source)); }
            const auto dst = sst.find_state(d.target.text);
            if (!dst) { error(d.target, "undeclared state " + show(d.target)); }
            Update u = Update::identity(m);
            std::vector<char> assigned(m, 0);
            for (const auto& [lhs, rhs] : d.assignments) {
                const auto x = reg_index.find(lhs.text);
                if (x == reg_index.end()) { error(lhs, "undeclared register " + show(lhs)); }
                if (assigned[x->second]) { error(lhs, "register " + show(lhs) + " assigned twice"); }
                assigned[x->second] = 1;
                SymWord img;
                for (const Token& t : rhs) {
                    if (const auto r = reg_index.find(t.text); r != reg_index.end()) {
                        img.push_back(Sym::reg(r->second));
                    } else if (is_letter_token(t.text)) {
                        img.push_back(Sym::letter(t.text[0]));
                    } else {
                        error(t, "expected a register or a single output letter, found " + show(t));
                    }
                }
                u.images[x->second] = std::move(img);
            }
            sst.transitions.push_back({*src, d.label.text[0], std::move(u), *dst});
        }

        const bool any_body = std::any_of(states_.begin(), states_.end(), [](const StateDecl& d) { return d.has_body; });
        if (alpha_ || any_body) {
            if (!alpha_) { error(end, "annotated states need an 'alpha' declaration"); }
            doc.alpha = alpha_;
            for (const StateDecl& d : states_) { doc.annotation.push_back(annotation_of(d, sst, reg_index, doc)); }
        }
        if (doc.annotated()) {
            AnnotatedSst a{std::move(doc.machine), *doc.alpha, std::move(doc.origin), std::move(doc.annotation)};
            canonicalize(a);
            doc.machine = std::move(a.machine);
            doc.origin = std::move(a.origin);
            doc.annotation = std::move(a.annotation);
        } else {
            canonicalize(doc.machine);
        }
        return doc;
    }

    Approximant annotation_of(const StateDecl& d, const Sst& sst, const std::map<std::string, std::size_t>& reg_index,
                              SstDocument& doc) {
        if (!d.has_body) { error(d.name, "state " + show(d.name) + " has no annotation"); }
        if (!d.origin) { error(d.name, "state " + show(d.name) + " has no origin"); }
        doc.origin.push_back(*d.origin);
        const std::size_t m = sst.num_registers();
        std::vector<std::optional<ApproxLang>> regs(m), gaps(m + 1);
        for (const auto& [key, value] : d.values) {
            std::optional<ApproxLang>* slot = nullptr;
            if (const auto r = reg_index.find(key.text); r != reg_index.end()) {
                slot = &regs[r->second];
            } else if (key.text.size() >= 2 && key.text[0] == 'y' &&
                       std::all_of(key.text.begin() + 1, key.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                const std::size_t j = std::stoul(key.text.substr(1));
                if (j <= m) { slot = &gaps[j]; }
            }
            if (!slot) { error(key, "unknown variable " + show(key)); }
            if (*slot) { error(key, "variable " + show(key) + " annotated twice"); }
            try {
                *slot = ApproxLang::parse(value.text);
            } catch (const Error& e) {
                error(value, e.what());
            }
        }
        Approximant a;
        for (std::size_t x = 0; x < m; ++x) {
            if (!regs[x]) { error(d.name, "state " + show(d.name) + " misses register " + sst.registers[x]); }
            a.regs.push_back(*regs[x]);
        }
        for (std::size_t j = 0; j <= m; ++j) {
            if (!gaps[j]) { error(d.name, "state " + show(d.name) + " misses gap y" + std::to_string(j)); }
            a.gaps.push_back(*gaps[j]);
        }
        return a;
    }
};

std::string letters_line(const std::string& letters) {
    std::string out;
    for (char c : letters) {
        out += ' ';
        out += c;
    }
    return out;
}

std::string header(const Sst& sst) {
    std::string out = "alphabet input:" + letters_line(sst.input_alphabet) + ";\n";
    out += "alphabet output:" + letters_line(sst.output_alphabet) + ";\n";
    out += "registers:";
    for (const std::string& r : sst.registers) { out += " " + r; }
    out += ";\noutput: " + sst.registers.at(sst.output_register) + ";\n";
    return out;
}

std::string state_line(const Sst& sst, StateId q) {
    std::string out = "state " + sst.states[q];
    if (sst.initial[q]) { out += " initial"; }
    if (sst.final[q]) { out += " final"; }
    return out;
}

std::string transitions(const Sst& sst) {
    std::string out;
    for (const Transition& t : sst.transitions) {
        out += "trans " + sst.states[t.source] + " -> " + sst.states[t.target] + " on " + t.label + " {";
        for (std::size_t x = 0; x < t.update.num_registers(); ++x) {
            out += " " + sst.registers[x] + " :=";
            const std::string rhs = sst.word_text(t.update.images[x]);
            out += rhs.empty() ? " ;" : " " + rhs + ";";
        }
        out += " }\n";
    }
    return out;
}

} // namespace

SstDocument parse_document(const std::string& text) { return Parser(text).run(); }

Sst parse_sst(const std::string& text) { return parse_document(text).machine; }

AnnotatedSst to_annotated(const SstDocument& doc) {
    if (!doc.annotated()) { fail(ErrorKind::InvalidArgument, "machine has no approximant annotation"); }
    return {doc.machine, *doc.alpha, doc.origin, doc.annotation};
}

std::string serialize_sst(const Sst& sst) {
    Sst c = sst;
    canonicalize(c);
    std::string out = header(c);
    for (StateId q = 0; q < c.num_states(); ++q) { out += state_line(c, q) + ";\n"; }
    return out + transitions(c);
}

std::string serialize_annotated(const AnnotatedSst& a) {
    AnnotatedSst c = a;
    canonicalize(c);
    const Sst& sst = c.machine;
    std::string out = header(sst) + "alpha: " + std::to_string(c.alpha) + ";\n";
    for (StateId q = 0; q < sst.num_states(); ++q) {
        out += state_line(sst, q) + " {\n  origin " + c.origin[q] + ";\n";
        const Approximant& ap = c.annotation[q];
        for (std::size_t x = 0; x < sst.num_registers(); ++x) {
            out += "  " + sst.registers[x] + " = " + ap.regs[x].to_string() + ";\n";
        }
        for (std::size_t j = 0; j < ap.gaps.size(); ++j) {
            out += "  y" + std::to_string(j) + " = " + ap.gaps[j].to_string() + ";\n";
        }
        out += "}\n";
    }
    return out + transitions(sst);
}

} // namespace sstlab
