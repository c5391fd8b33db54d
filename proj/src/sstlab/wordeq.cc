#include "sstlab/wordeq.hh"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "sstlab/error.hh"

namespace sstlab {

std::size_t EqSystem::intern(const std::string& name) {
    auto it = std::find(unknowns.begin(), unknowns.end(), name);
    if (it != unknowns.end()) { return static_cast<std::size_t>(it - unknowns.begin()); }
    unknowns.push_back(name);
    return unknowns.size() - 1;
}

std::string apply_assignment(const Assignment& sigma, const SymWord& w) {
    std::string out;
    for (const Sym& s : w) {
        if (s.is_letter()) {
            out.push_back(s.as_letter());
        } else if (s.is_unknown() && s.index() < sigma.size()) {
            out += sigma[s.index()];
        } else {
            fail(ErrorKind::InvalidArgument, "assignment does not cover the equation");
        }
    }
    return out;
}

bool satisfies(const Assignment& sigma, const Equation& eq) {
    return apply_assignment(sigma, eq.lhs) == apply_assignment(sigma, eq.rhs);
}

bool satisfies(const Assignment& sigma, const Conjunction& conj) {
    return std::all_of(conj.begin(), conj.end(), [&](const Equation& e) { return satisfies(sigma, e); });
}

bool satisfies(const Assignment& sigma, const Clause& clause) {
    return std::any_of(clause.disjuncts.begin(), clause.disjuncts.end(),
                       [&](const Conjunction& c) { return satisfies(sigma, c); });
}

bool satisfies(const Assignment& sigma, const EqSystem& sys) {
    if (sigma.size() < sys.unknowns.size()) { fail(ErrorKind::InvalidArgument, "assignment misses unknowns"); }
    return std::all_of(sys.clauses.begin(), sys.clauses.end(), [&](const Clause& c) { return satisfies(sigma, c); });
}

std::string letters_of(const EqSystem& sys) {
    std::set<char> seen;
    for (const Clause& c : sys.clauses) {
        for (const Conjunction& conj : c.disjuncts) {
            for (const Equation& e : conj) {
                for (const SymWord* side : {&e.lhs, &e.rhs}) {
                    for (const Sym& s : *side) {
                        if (s.is_letter()) { seen.insert(s.as_letter()); }
                    }
                }
            }
        }
    }
    return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------------------------
// Bounded search

namespace {

/// Length balance of one equation: Σ coef[v]·|σ(v)| + constant = 0.
struct LengthConstraint {
    std::vector<long> coef;
    long constant{0};
};

/// Words of length ≤ max_len over `alphabet`, in lexicographic order.
void lex_words(const std::string& alphabet, std::size_t max_len, std::string& cur, std::vector<std::string>& out) {
    out.push_back(cur);
    if (cur.size() == max_len) { return; }
    for (char c : alphabet) {
        cur.push_back(c);
        lex_words(alphabet, max_len, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::optional<Assignment> solve_bounded(const EqSystem& sys, std::size_t max_len, Budget& budget,
                                        const std::optional<std::string>& alphabet_opt) {
    const std::size_t n = sys.unknowns.size();
    const std::string alphabet = alphabet_opt ? *alphabet_opt : letters_of(sys);

    std::vector<char> occurs(n, 0);
    for (const Clause& c : sys.clauses) {
        for (const Conjunction& conj : c.disjuncts) {
            for (const Equation& e : conj) {
                for (const SymWord* side : {&e.lhs, &e.rhs}) {
                    for (const Sym& s : *side) {
                        if (s.is_unknown()) { occurs.at(s.index()) = 1; }
                    }
                }
            }
        }
    }
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < n; ++v) {
        if (occurs[v]) { vars.push_back(v); }
    }

    // Constant propagation from unit clauses of the form X = w.
    std::vector<std::optional<std::string>> fixed(n);
    for (const Clause& c : sys.clauses) {
        if (c.disjuncts.size() != 1) { continue; }
        for (const Equation& e : c.disjuncts[0]) {
            for (auto [var, other] : {std::pair{&e.lhs, &e.rhs}, std::pair{&e.rhs, &e.lhs}}) {
                if (var->size() != 1 || !(*var)[0].is_unknown()) { continue; }
                if (!std::all_of(other->begin(), other->end(), [](const Sym& s) { return s.is_letter(); })) { continue; }
                const std::size_t x = (*var)[0].index();
                const std::string value = letters_of(*other);
                if (fixed[x] && *fixed[x] != value) { return std::nullopt; }
                fixed[x] = value;
            }
        }
    }

    // Length abstraction, per clause and disjunct.
    std::vector<std::vector<std::vector<LengthConstraint>>> lengths;
    for (const Clause& c : sys.clauses) {
        auto& clause_lengths = lengths.emplace_back();
        for (const Conjunction& conj : c.disjuncts) {
            auto& conj_lengths = clause_lengths.emplace_back();
            for (const Equation& e : conj) {
                LengthConstraint lc{std::vector<long>(n, 0), 0};
                for (const Sym& s : e.lhs) { s.is_unknown() ? ++lc.coef[s.index()] : ++lc.constant; }
                for (const Sym& s : e.rhs) { s.is_unknown() ? --lc.coef[s.index()] : --lc.constant; }
                conj_lengths.push_back(std::move(lc));
            }
        }
    }
    auto lengths_feasible = [&](const Assignment& sigma) {
        for (const auto& clause_lengths : lengths) {
            const bool ok = std::any_of(clause_lengths.begin(), clause_lengths.end(), [&](const auto& conj) {
                return std::all_of(conj.begin(), conj.end(), [&](const LengthConstraint& lc) {
                    long total = lc.constant;
                    for (std::size_t v = 0; v < n; ++v) { total += lc.coef[v] * static_cast<long>(sigma[v].size()); }
                    return total == 0;
                });
            });
            if (!ok) { return false; }
        }
        return true;
    };

    std::vector<std::string> all_words;
    {
        std::string cur;
        lex_words(alphabet, max_len, cur, all_words);
    }
    std::vector<std::vector<std::string>> candidates;
    for (std::size_t v : vars) {
        if (fixed[v]) {
            if (fixed[v]->size() > max_len) { return std::nullopt; }
            candidates.push_back({*fixed[v]});
        } else {
            candidates.push_back(all_words);
        }
    }

    Assignment sigma(n);
    std::optional<Assignment> found;
    // Values are chosen in lexicographic order per unknown, so each total length is visited in
    // lexicographic order of the value tuple.
    auto search = [&](auto&& self, std::size_t i, std::size_t remaining) -> bool {
        if (i == vars.size()) {
            if (remaining != 0) { return false; }
            budget.charge();
            if (lengths_feasible(sigma) && satisfies(sigma, sys)) {
                found = sigma;
                return true;
            }
            return false;
        }
        for (const std::string& w : candidates[i]) {
            if (w.size() > remaining) { continue; }
            if (i + 1 == vars.size() && w.size() != remaining) { continue; }
            sigma[vars[i]] = w;
            if (self(self, i + 1, remaining - w.size())) { return true; }
        }
        sigma[vars[i]].clear();
        return false;
    };
    for (std::size_t total = 0; total <= vars.size() * max_len; ++total) {
        if (search(search, 0, total)) { return found; }
        if (vars.empty()) { break; }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Nielsen transformations

namespace {

struct Subst {
    enum class Kind { Erase, PrependLetter, PrependUnknown };
    Kind kind{Kind::Erase};
    std::size_t var{0};
    Sym head;  ///< the prepended letter or unknown
};

SymWord apply_subst(const Subst& s, const SymWord& w) {
    SymWord out;
    out.reserve(w.size() + 4);
    for (const Sym& x : w) {
        if (!(x.is_unknown() && x.index() == s.var)) {
            out.push_back(x);
            continue;
        }
        if (s.kind != Subst::Kind::Erase) {
            out.push_back(s.head);
            out.push_back(x);
        }
    }
    return out;
}

void apply_subst(const Subst& s, Conjunction& eqs) {
    for (Equation& e : eqs) {
        e.lhs = apply_subst(s, e.lhs);
        e.rhs = apply_subst(s, e.rhs);
    }
}

enum class Simplified { Open, Unsat, Solved };

bool has_unknown(const SymWord& w) {
    return std::any_of(w.begin(), w.end(), [](const Sym& s) { return s.is_unknown(); });
}

/// A constant side must contain at least the letters of the other side.
bool letters_fit(const SymWord& constant, const SymWord& other) {
    if (letter_count(other) > constant.size()) { return false; }
    std::string have = letters_of(constant), need = letters_of(other);
    std::sort(have.begin(), have.end());
    std::sort(need.begin(), need.end());
    return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

/// Cancels common prefixes and suffixes, erases unknowns facing an empty side, and detects
/// clashes. Forced erasures are appended to `log`.
Simplified simplify(Conjunction& eqs, std::vector<Subst>& log) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Equation& e : eqs) {
            std::size_t p = 0;
            while (p < e.lhs.size() && p < e.rhs.size() && e.lhs[p] == e.rhs[p]) { ++p; }
            e.lhs.erase(e.lhs.begin(), e.lhs.begin() + static_cast<long>(p));
            e.rhs.erase(e.rhs.begin(), e.rhs.begin() + static_cast<long>(p));
            while (!e.lhs.empty() && !e.rhs.empty() && e.lhs.back() == e.rhs.back()) {
                e.lhs.pop_back();
                e.rhs.pop_back();
            }
        }
        eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const Equation& e) { return e.lhs.empty() && e.rhs.empty(); }),
                  eqs.end());
        for (const Equation& e : eqs) {
            if (e.lhs.empty() || e.rhs.empty()) {
                const SymWord& other = e.lhs.empty() ? e.rhs : e.lhs;
                if (letter_count(other) > 0) { return Simplified::Unsat; }
                const Subst s{Subst::Kind::Erase, other.front().index(), {}};
                log.push_back(s);
                apply_subst(s, eqs);
                changed = true;
                break;
            }
            if (e.lhs.front().is_letter() && e.rhs.front().is_letter()) { return Simplified::Unsat; }
            if (e.lhs.back().is_letter() && e.rhs.back().is_letter()) { return Simplified::Unsat; }
            if (!has_unknown(e.lhs) && !letters_fit(e.lhs, e.rhs)) { return Simplified::Unsat; }
            if (!has_unknown(e.rhs) && !letters_fit(e.rhs, e.lhs)) { return Simplified::Unsat; }
        }
    }
    if (eqs.empty()) { return Simplified::Solved; }
    for (Equation& e : eqs) {
        if (e.rhs < e.lhs) { std::swap(e.lhs, e.rhs); }
    }
    std::sort(eqs.begin(), eqs.end());
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
    return Simplified::Open;
}

struct Node {
    Conjunction eqs;
    std::size_t parent{SIZE_MAX};
    std::vector<Subst> log;  ///< substitutions leading from the parent to this node
    std::size_t depth{0};
};

Assignment reconstruct(const std::vector<Node>& nodes, std::size_t leaf, const std::vector<Subst>& leaf_log,
                       std::size_t num_unknowns) {
    Assignment sigma(num_unknowns);
    auto undo = [&](const std::vector<Subst>& log) {
        for (auto it = log.rbegin(); it != log.rend(); ++it) {
            switch (it->kind) {
            case Subst::Kind::Erase: sigma[it->var].clear(); break;
            case Subst::Kind::PrependLetter: sigma[it->var] = std::string(1, it->head.as_letter()) + sigma[it->var]; break;
            case Subst::Kind::PrependUnknown: sigma[it->var] = sigma[it->head.index()] + sigma[it->var]; break;
            }
        }
    };
    undo(leaf_log);
    for (std::size_t i = leaf; i != SIZE_MAX; i = nodes[i].parent) { undo(nodes[i].log); }
    return sigma;
}

std::size_t size_of(const Conjunction& eqs) {
    std::size_t n = 0;
    for (const Equation& e : eqs) { n += e.lhs.size() + e.rhs.size(); }
    return n;
}

} // namespace

NielsenResult solve_nielsen(const Conjunction& input, std::size_t num_unknowns, std::size_t depth, Budget& budget) {
    NielsenResult result;
    std::vector<Node> nodes;
    Node root;
    root.eqs = input;
    const Simplified s0 = simplify(root.eqs, root.log);
    if (s0 == Simplified::Unsat) {
        result.status = SolveStatus::Unsat;
        return result;
    }
    if (s0 == Simplified::Solved) {
        result.status = SolveStatus::Sat;
        result.witness = reconstruct(nodes, SIZE_MAX, root.log, num_unknowns);
        return result;
    }
    // Equations that grow without bound are cut like deep states.
    const std::size_t size_cap = 4 * size_of(root.eqs) + 64;
    std::set<Conjunction> visited{root.eqs};
    nodes.push_back(std::move(root));
    std::deque<std::size_t> queue{0};
    bool cut = false;
    try {
        while (!queue.empty()) {
            const std::size_t id = queue.front();
            queue.pop_front();
            budget.charge();
            ++result.states;
            if (nodes[id].depth >= depth || size_of(nodes[id].eqs) > size_cap) {
                cut = true;
                continue;
            }
            const Equation& e = nodes[id].eqs.front();
            const Sym h1 = e.lhs.front(), h2 = e.rhs.front();
            std::vector<Subst> branches;
            auto variable_vs_letter = [&](Sym var, Sym letter) {
                branches.push_back({Subst::Kind::Erase, var.index(), {}});
                branches.push_back({Subst::Kind::PrependLetter, var.index(), letter});
            };
            if (h1.is_unknown() && h2.is_unknown()) {
                branches.push_back({Subst::Kind::Erase, h1.index(), {}});
                branches.push_back({Subst::Kind::Erase, h2.index(), {}});
                branches.push_back({Subst::Kind::PrependUnknown, h1.index(), h2});
                branches.push_back({Subst::Kind::PrependUnknown, h2.index(), h1});
            } else if (h1.is_unknown()) {
                variable_vs_letter(h1, h2);
            } else {
                variable_vs_letter(h2, h1);
            }
            for (const Subst& s : branches) {
                Node child;
                child.eqs = nodes[id].eqs;
                child.parent = id;
                child.depth = nodes[id].depth + 1;
                child.log.push_back(s);
                apply_subst(s, child.eqs);
                const Simplified st = simplify(child.eqs, child.log);
                if (st == Simplified::Unsat) { continue; }
                if (st == Simplified::Solved) {
                    result.status = SolveStatus::Sat;
                    result.witness = reconstruct(nodes, id, child.log, num_unknowns);
                    return result;
                }
                if (!visited.insert(child.eqs).second) { continue; }
                nodes.push_back(std::move(child));
                queue.push_back(nodes.size() - 1);
            }
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) { throw; }
        result.status = SolveStatus::Unknown;
        return result;
    }
    result.status = cut ? SolveStatus::Unknown : SolveStatus::Unsat;
    return result;
}

// ---------------------------------------------------------------------------------------------
// Text format

namespace {

SymWord parse_side(EqSystem& sys, const std::string& text, std::size_t line) {
    SymWord out;
    std::size_t i = 0;
    auto where = [&] { return "line " + std::to_string(line) + ": "; };
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (text.compare(i, 2, "\"\"") == 0) {
            i += 2;
        } else if (std::isupper(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && (std::isupper(static_cast<unsigned char>(text[j])) ||
                                       std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            out.push_back(Sym::unknown(sys.intern(text.substr(i, j - i))));
            i = j;
        } else if (std::islower(c) || std::isdigit(c)) {
            out.push_back(Sym::letter(text[i]));
            ++i;
        } else {
            fail(ErrorKind::Parse, where() + "unexpected character '" + std::string(1, text[i]) + "'");
        }
    }
    return out;
}

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) { return {}; }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

EqSystem parse_system(const std::string& text) {
    EqSystem sys;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::string pending_provenance;
    bool have_clause = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            const std::string comment = trim_ws(line.substr(hash + 1));
            if (comment.rfind("u=", 0) == 0) { pending_provenance = comment.substr(2); }
            line = line.substr(0, hash);
        }
        line = trim_ws(line);
        if (line.empty()) { continue; }
        char lead = 0;
        if (line[0] == '&' || line[0] == '|') {
            lead = line[0];
            line = trim_ws(line.substr(1));
            if (!have_clause) { fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": no clause to continue"); }
        }
        if (lead == 0) {
            sys.clauses.push_back(Clause{{}, pending_provenance});
            pending_provenance.clear();
            have_clause = true;
        }
        Clause& clause = sys.clauses.back();
        if (line == "FALSE") {
            if (lead != 0 || !clause.disjuncts.empty()) {
                fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": FALSE must stand alone");
            }
            continue;
        }
        if (lead != '&') { clause.disjuncts.emplace_back(); }
        if (clause.disjuncts.empty()) {
            fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": '&' after FALSE");
        }
        if (line == "TRUE") { continue; }
        const auto eq = line.find('=');
        if (eq == std::string::npos || line.find('=', eq + 1) != std::string::npos) {
            fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected LHS = RHS");
        }
        clause.disjuncts.back().push_back(
            {parse_side(sys, line.substr(0, eq), line_no), parse_side(sys, line.substr(eq + 1), line_no)});
    }
    return sys;
}

std::string side_text(const EqSystem& sys, const SymWord& w) {
    if (w.empty()) { return "\"\""; }
    std::string out;
    for (const Sym& s : w) {
        if (!out.empty()) { out += ' '; }
        if (s.is_unknown()) {
            out += sys.unknowns.at(s.index());
        } else {
            out += s.as_letter();
        }
    }
    return out;
}

std::string serialize_system(const EqSystem& sys) {
    std::string out;
    for (const Clause& c : sys.clauses) {
        if (!c.provenance.empty()) { out += "# u=" + c.provenance + "\n"; }
        if (c.disjuncts.empty()) {
            out += "FALSE\n";
            continue;
        }
        for (std::size_t d = 0; d < c.disjuncts.size(); ++d) {
            const Conjunction& conj = c.disjuncts[d];
            const std::string lead = d == 0 ? "" : "| ";
            if (conj.empty()) {
                out += lead + "TRUE\n";
                continue;
            }
            for (std::size_t i = 0; i < conj.size(); ++i) {
                out += (i == 0 ? lead : "& ") + side_text(sys, conj[i].lhs) + " = " + side_text(sys, conj[i].rhs) + "\n";
            }
        }
    }
    return out;
}

} // namespace sstlab
