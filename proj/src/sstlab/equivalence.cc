#include "sstlab/equivalence.hh"

#include <algorithm>
#include <map>
#include <tuple>

#include "sstlab/error.hh"
#include "sstlab/normalize.hh"

namespace sstlab {

SymWord eff(const Update& f) {
    if (!is_flow_normalized(f)) { fail(ErrorKind::Precondition, "eff: update is not flow-normalized"); }
    return gapped_image(f);
}

namespace {

const ApproxLang& lang_of(const Sym& z, const std::vector<ApproxLang>& regs, const std::vector<ApproxLang>& gaps) {
    return z.is_reg() ? regs.at(z.index()) : gaps.at(z.index());
}

/// Residue t such that lang ⊆ r^* r[0,t), if any.
std::optional<std::size_t> periodic_residue(const ApproxLang& lang, const std::string& r) {
    switch (lang.kind()) {
    case ApproxLang::Kind::Empty: return 0;
    case ApproxLang::Kind::Universal: return std::nullopt;
    case ApproxLang::Kind::Singleton: {
        const std::string& z = lang.word();
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (z[i] != r[i % r.size()]) { return std::nullopt; }
        }
        return z.size() % r.size();
    }
    case ApproxLang::Kind::Periodic:
        if (lang.word() != r) { return std::nullopt; }
        return lang.residue().size();
    }
    return std::nullopt;
}

} // namespace

bool eff_words_equal_under(const SymWord& lhs, const SymWord& rhs, const std::vector<ApproxLang>& regs,
                           const std::vector<ApproxLang>& gaps) {
    auto has_empty = [](const std::vector<ApproxLang>& v) {
        return std::any_of(v.begin(), v.end(), [](const ApproxLang& l) { return l.is_empty(); });
    };
    if (has_empty(regs) || has_empty(gaps)) { return true; }

    SymWord left = lhs, right = rhs;
    std::size_t i = 0, j = 0;
    while (true) {
        while (i < left.size() && j < right.size() && left[i].is_letter() && right[j].is_letter()) {
            if (left[i] != right[j]) { return false; }
            ++i;
            ++j;
        }
        if (i == left.size() || j == right.size()) {
            const SymWord& rest = (i == left.size()) ? right : left;
            const std::size_t from = (i == left.size()) ? j : i;
            if (std::any_of(rest.begin() + static_cast<long>(from), rest.end(), [](const Sym& s) { return !s.is_letter(); })) {
                fail(ErrorKind::Precondition, "eff words list different variables");
            }
            return i == left.size() && j == right.size();
        }
        if (!left[i].is_letter() && !right[j].is_letter()) {
            if (left[i] != right[j]) { fail(ErrorKind::Precondition, "eff words list variables in different orders"); }
            ++i;
            ++j;
            continue;
        }
        // One side reads z, the other w z with w a nonempty letter block: z must be a prefix of
        // w^ω with a fixed residue, and w z = z w' for the matching conjugate w'.
        const bool left_var = !left[i].is_letter();
        SymWord& var_side = left_var ? left : right;
        SymWord& word_side = left_var ? right : left;
        std::size_t& vi = left_var ? i : j;
        std::size_t& wi = left_var ? j : i;
        std::string w;
        std::size_t k = wi;
        while (k < word_side.size() && word_side[k].is_letter()) { w.push_back(word_side[k++].as_letter()); }
        if (k == word_side.size() || word_side[k] != var_side[vi]) {
            fail(ErrorKind::Precondition, "eff words list variables in different orders");
        }
        const std::string r = primitive_root(w);
        const auto t = periodic_residue(lang_of(var_side[vi], regs, gaps), r);
        if (!t) { return false; }
        const std::string rotated = r.substr(*t) + r.substr(0, *t);
        SymWord rest;
        for (std::size_t p = 0; p < w.size() / r.size(); ++p) {
            for (char c : rotated) { rest.push_back(Sym::letter(c)); }
        }
        rest.insert(rest.end(), word_side.begin() + static_cast<long>(k + 1), word_side.end());
        word_side = std::move(rest);
        wi = 0;
        ++vi;
    }
}

bool transitions_equiv(const Transition& t1, const Transition& t2, const std::vector<ApproxLang>& regs,
                       const std::vector<ApproxLang>& gaps) {
    if (t1.label != t2.label) { fail(ErrorKind::Precondition, "transitions_equiv: labels differ"); }
    if (flow_of(t1.update) != flow_of(t2.update)) { fail(ErrorKind::Precondition, "transitions_equiv: flows differ"); }
    return eff_words_equal_under(eff(t1.update), eff(t2.update), regs, gaps);
}

namespace {

struct Prefix {
    Run run;
    Valuation nu;
};

struct Suffix {
    Run run;
    Update update;
};

} // namespace

OracleVerdict transitions_equiv_oracle(const Sst& sst, std::size_t t1, std::size_t t2, std::size_t max_len) {
    const Transition& a = sst.transitions.at(t1);
    const Transition& b = sst.transitions.at(t2);
    if (a.source != b.source || a.target != b.target || a.label != b.label) {
        fail(ErrorKind::Precondition, "transitions_equiv_oracle: transitions do not share endpoints and label");
    }
    const auto out = outgoing(sst);
    const std::size_t m = sst.num_registers();

    // Initial runs into the source, marker-free.
    std::vector<Prefix> prefixes;
    {
        Run cur;
        auto dfs = [&](auto&& self, StateId q, const Valuation& nu) -> void {
            if (q == a.source) { prefixes.push_back({cur, nu}); }
            if (cur.size() == max_len) { return; }
            for (std::size_t ti : out[q]) {
                const Transition& t = sst.transitions[ti];
                if (t.label == kMarker) { continue; }
                cur.steps.push_back(ti);
                self(self, t.target, apply_update(nu, t.update));
                cur.steps.pop_back();
            }
        };
        for (StateId q = 0; q < sst.num_states(); ++q) {
            if (!sst.initial[q]) { continue; }
            cur.start = q;
            dfs(dfs, q, Valuation(m));
        }
    }
    // Final runs out of the target, ending with the marker.
    std::vector<Suffix> suffixes;
    if (a.label == kMarker) {
        if (sst.final[a.target]) { suffixes.push_back({Run{a.target, {}}, Update::identity(m)}); }
    } else {
        Run cur{a.target, {}};
        auto dfs = [&](auto&& self, StateId q, const Update& u) -> void {
            if (cur.size() == max_len) { return; }
            for (std::size_t ti : out[q]) {
                const Transition& t = sst.transitions[ti];
                cur.steps.push_back(ti);
                const Update next = compose_updates(u, t.update);
                if (t.label == kMarker) {
                    if (sst.final[t.target]) { suffixes.push_back({cur, next}); }
                } else {
                    self(self, t.target, next);
                }
                cur.steps.pop_back();
            }
        };
        dfs(dfs, a.target, Update::identity(m));
    }

    OracleVerdict verdict;
    for (const Prefix& p : prefixes) {
        const Valuation nu1 = apply_update(p.nu, a.update);
        const Valuation nu2 = apply_update(p.nu, b.update);
        for (const Suffix& s : suffixes) {
            if (p.run.size() + s.run.size() > max_len) { continue; }
            ++verdict.contexts;
            const SymWord& out_image = s.update.images[sst.output_register];
            std::string o1 = evaluate(nu1, out_image);
            std::string o2 = evaluate(nu2, out_image);
            if (o1 == o2) { continue; }
            ++verdict.witnesses;
            if (!verdict.witness) {
                verdict.witness = Context{p.run, s.run, run_input(sst, p.run) + a.label + run_input(sst, s.run),
                                          std::move(o1), std::move(o2)};
            }
        }
    }
    verdict.equivalent = verdict.witnesses == 0;
    return verdict;
}

std::size_t edge_ambiguity(const Sst& sst) {
    std::map<std::tuple<StateId, char, StateId>, std::size_t> count;
    std::size_t best = 0;
    for (const Transition& t : sst.transitions) {
        best = std::max(best, ++count[{t.source, t.label, t.target}]);
    }
    return best;
}

AnnotatedSst prune_edges(const AnnotatedSst& a) {
    const Sst& sst = a.machine;
    std::map<std::tuple<StateId, char, StateId, Flow>, std::vector<std::size_t>> kept;
    std::vector<char> keep(sst.transitions.size(), 0);
    // Transitions are in canonical order, so the first of each class is the least.
    for (std::size_t ti = 0; ti < sst.transitions.size(); ++ti) {
        const Transition& t = sst.transitions[ti];
        auto& reps = kept[{t.source, t.label, t.target, flow_of(t.update)}];
        const bool redundant = std::any_of(reps.begin(), reps.end(), [&](std::size_t ri) {
            return transitions_equiv(sst.transitions[ri], t, a.annotation.at(t.source).regs,
                                     a.annotation.at(t.target).gaps);
        });
        if (!redundant) {
            reps.push_back(ti);
            keep[ti] = 1;
        }
    }
    AnnotatedSst out = a;
    out.machine.transitions.clear();
    for (std::size_t ti = 0; ti < sst.transitions.size(); ++ti) {
        if (keep[ti]) { out.machine.transitions.push_back(sst.transitions[ti]); }
    }
    return out;
}

std::size_t edge_ambiguity_bound(std::size_t k, std::size_t num_registers) { return k << num_registers; }

} // namespace sstlab
