#include "sstlab/schema.hh"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>

#include "sstlab/error.hh"
#include "sstlab/run.hh"

namespace sstlab {

Schema schema_of(const Sst& sst, const std::string& prefix) {
    const bool ok = !prefix.empty() && std::isupper(static_cast<unsigned char>(prefix[0])) &&
                    std::all_of(prefix.begin(), prefix.end(), [](char c) {
                        return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
                    });
    if (!ok) { fail(ErrorKind::InvalidArgument, "schema_of: bad unknown prefix '" + prefix + "'"); }
    Schema s;
    s.skeleton = sst;
    for (Transition& t : s.skeleton.transitions) {
        for (SymWord& img : t.update.images) {
            SymWord out;
            std::string factor;
            auto flush = [&] {
                if (factor.empty()) { return; }
                out.push_back(Sym::unknown(s.phi.size()));
                s.unknown_names.push_back(prefix + std::to_string(s.phi.size() + 1));
                s.phi.push_back(std::move(factor));
                factor.clear();
            };
            for (const Sym& sym : img) {
                if (sym.is_letter()) {
                    factor.push_back(sym.as_letter());
                } else {
                    flush();
                    out.push_back(sym);
                }
            }
            flush();
            img = std::move(out);
        }
    }
    return s;
}

Sst concretize(const Schema& schema) {
    Sst out = schema.skeleton;
    for (Transition& t : out.transitions) {
        for (SymWord& img : t.update.images) {
            SymWord w;
            for (const Sym& sym : img) {
                if (!sym.is_unknown()) {
                    w.push_back(sym);
                    continue;
                }
                for (char c : schema.phi.at(sym.index())) { w.push_back(Sym::letter(c)); }
            }
            img = std::move(w);
        }
    }
    return out;
}

std::string schema_text(const Schema& schema) {
    const Sst& sk = schema.skeleton;
    auto token = [&](const Sym& s) -> std::string {
        if (s.is_reg()) { return sk.registers.at(s.index()); }
        if (s.is_unknown()) { return schema.unknown_names.at(s.index()); }
        return std::string(1, s.as_letter());
    };
    std::string out = "registers:";
    for (const std::string& r : sk.registers) { out += " " + r; }
    out += ";\noutput: " + sk.registers.at(sk.output_register) + ";\n";
    for (StateId q = 0; q < sk.num_states(); ++q) {
        out += "state " + sk.states[q];
        if (sk.initial[q]) { out += " initial"; }
        if (sk.final[q]) { out += " final"; }
        out += ";\n";
    }
    for (const Transition& t : sk.transitions) {
        out += "trans " + sk.states[t.source] + " -> " + sk.states[t.target] + " on " + t.label + " {";
        for (std::size_t x = 0; x < t.update.num_registers(); ++x) {
            out += " " + sk.registers[x] + " :=";
            for (const Sym& s : t.update.images[x]) { out += " " + token(s); }
            out += ";";
        }
        out += " }\n";
    }
    for (std::size_t i = 0; i < schema.phi.size(); ++i) {
        out += "phi " + schema.unknown_names[i] + " = " + schema.phi[i] + ";\n";
    }
    return out;
}

std::vector<SymWord> symbolic_outputs(const Schema& schema, const std::string& input) {
    std::vector<SymWord> out;
    for (const Run& r : runs(schema.skeleton, input)) {
        SymWord w = run_update(schema.skeleton, r).images.at(schema.skeleton.output_register);
        // Registers start empty.
        w.erase(std::remove_if(w.begin(), w.end(), [](const Sym& s) { return s.is_reg(); }), w.end());
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

constexpr std::uint64_t kMaxPartitions = 1'000'000;

/// Partitions of n items into at most k blocks (Stirling numbers of the second kind), saturating.
std::uint64_t partition_count(std::size_t n, std::size_t k) {
    const std::uint64_t cap = kMaxPartitions + 1;
    k = std::min(k, n);
    std::vector<std::uint64_t> row(k + 1, 0);  // row[j] = S(i, j)
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            row[j] = std::min(cap, j * row[j] + row[j - 1]);
        }
        row[0] = 0;
    }
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= k; ++j) { total = std::min(cap, total + row[j]); }
    return total;
}

SymWord to_system(const Schema& s, const SymWord& w, EqSystem& sys) {
    SymWord out;
    for (const Sym& sym : w) {
        out.push_back(sym.is_unknown() ? Sym::unknown(sys.intern(s.unknown_names.at(sym.index()))) : sym);
    }
    return out;
}

} // namespace

Clause build_clause(const Schema& s1, const Schema& s2, std::size_t k, const std::string& input, EqSystem& sys) {
    Clause clause;
    clause.provenance = input;
    const auto outs1 = symbolic_outputs(s1, input);
    const auto outs2 = symbolic_outputs(s2, input);
    if (outs1.empty() && outs2.empty()) {
        clause.disjuncts.emplace_back();
        return clause;
    }
    if (outs1.empty() || outs2.empty()) { return clause; }

    // Distinct outputs, with bit 1 for T1 and bit 2 for T2.
    std::vector<std::pair<SymWord, unsigned>> items;
    auto add = [&](SymWord w, unsigned side) {
        for (auto& [word, flags] : items) {
            if (word == w) {
                flags |= side;
                return;
            }
        }
        items.emplace_back(std::move(w), side);
    };
    for (const SymWord& w : outs1) { add(to_system(s1, w, sys), 1); }
    for (const SymWord& w : outs2) { add(to_system(s2, w, sys), 2); }
    if (partition_count(items.size(), k) > kMaxPartitions) {
        fail(ErrorKind::Budget, "build_system: too many partitions of the symbolic outputs on " + input);
    }

    std::set<Conjunction> disjuncts;
    std::vector<std::size_t> block(items.size(), 0);
    // Restricted growth strings with at most k blocks.
    auto visit = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (i == items.size()) {
            for (std::size_t b = 0; b < used; ++b) {
                unsigned flags = 0;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    if (block[j] == b) { flags |= items[j].second; }
                }
                if (flags != 3) { return; }
            }
            Conjunction conj;
            for (std::size_t b = 0; b < used; ++b) {
                std::optional<std::size_t> head;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    if (block[j] != b) { continue; }
                    if (!head) {
                        head = j;
                        continue;
                    }
                    Equation e{items[*head].first, items[j].first};
                    if (e.rhs < e.lhs) { std::swap(e.lhs, e.rhs); }
                    conj.push_back(std::move(e));
                }
            }
            std::sort(conj.begin(), conj.end());
            conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
            disjuncts.insert(std::move(conj));
            return;
        }
        for (std::size_t b = 0; b <= used && b < k; ++b) {
            block[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    visit(visit, 0, 0);
    clause.disjuncts.assign(disjuncts.begin(), disjuncts.end());
    return clause;
}

namespace {

std::string merged(const std::string& a, const std::string& b) {
    std::set<char> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

} // namespace

void add_clauses(const Schema& s1, const Schema& s2, std::size_t k, const std::string& alphabet, std::size_t min_len,
                 std::size_t max_len, EqSystem& sys) {
    for (const std::string& u : well_formed_inputs(alphabet, max_len)) {
        if (u.size() < min_len) { continue; }
        sys.clauses.push_back(build_clause(s1, s2, k, u, sys));
    }
}

EqSystem build_system(const Schema& s1, const Schema& s2, std::size_t k, std::size_t max_len) {
    EqSystem sys;
    add_clauses(s1, s2, k, merged(s1.skeleton.input_alphabet, s2.skeleton.input_alphabet), 0, max_len, sys);
    return sys;
}

Assignment phi_assignment(const EqSystem& sys, const Schema& s1, const Schema& s2) {
    Assignment sigma;
    for (const std::string& name : sys.unknowns) {
        std::optional<std::string> value;
        for (const Schema* s : {&s1, &s2}) {
            const auto it = std::find(s->unknown_names.begin(), s->unknown_names.end(), name);
            if (it == s->unknown_names.end()) { continue; }
            const std::string& v = s->phi[static_cast<std::size_t>(it - s->unknown_names.begin())];
            if (value && *value != v) { fail(ErrorKind::InvalidArgument, "phi_assignment: conflicting constants for " + name); }
            value = v;
        }
        if (!value) { fail(ErrorKind::InvalidArgument, "phi_assignment: unknown " + name + " belongs to no schema"); }
        sigma.push_back(*value);
    }
    return sigma;
}

EquivVerdict equiv_bounded(const Sst& t1, const Sst& t2, std::size_t max_len) {
    for (const std::string& u : well_formed_inputs(merged(t1.input_alphabet, t2.input_alphabet), max_len)) {
        auto o1 = eval(t1, u);
        auto o2 = eval(t2, u);
        if (o1 != o2) { return {false, u, std::move(o1), std::move(o2)}; }
    }
    return {};
}

FixpointResult testset_fixpoint(const Schema& s1, const Schema& s2, std::size_t k, std::size_t n, std::size_t bound,
                                Budget& budget) {
    FixpointResult result;
    const std::string alphabet = merged(s1.skeleton.input_alphabet, s2.skeleton.input_alphabet);
    try {
        add_clauses(s1, s2, k, alphabet, 0, n, result.system);
        const std::size_t old_clauses = result.system.clauses.size();
        add_clauses(s1, s2, k, alphabet, n + 1, n + 1, result.system);
        const EqSystem& sys = result.system;

        const std::string letters = merged(s1.skeleton.output_alphabet, s2.skeleton.output_alphabet);
        std::vector<std::string> values{""};
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].size() == bound) { continue; }
            for (char c : letters) { values.push_back(values[i] + c); }
        }
        const std::size_t m = sys.unknowns.size();
        std::vector<std::size_t> odometer(m, 0);
        Assignment sigma(m);
        while (true) {
            budget.charge();
            ++result.assignments;
            for (std::size_t v = 0; v < m; ++v) { sigma[v] = values[odometer[v]]; }
            bool holds_old = true;
            for (std::size_t c = 0; c < old_clauses && holds_old; ++c) { holds_old = satisfies(sigma, sys.clauses[c]); }
            if (holds_old) {
                for (std::size_t c = old_clauses; c < sys.clauses.size(); ++c) {
                    if (!satisfies(sigma, sys.clauses[c])) {
                        result.status = FixpointStatus::NotFixpoint;
                        result.witness = sigma;
                        result.input = sys.clauses[c].provenance;
                        return result;
                    }
                }
            }
            std::size_t v = 0;
            while (v < m && ++odometer[v] == values.size()) { odometer[v++] = 0; }
            if (v == m) { break; }
        }
        result.status = FixpointStatus::Fixpoint;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) { throw; }
        result.status = FixpointStatus::Unknown;
    }
    return result;
}

} // namespace sstlab
