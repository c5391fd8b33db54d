#include "sstlab/approximants.hh"

#include <algorithm>
#include <deque>
#include <set>

#include "sstlab/error.hh"
#include "sstlab/normalize.hh"

namespace sstlab {

Approximant Approximant::epsilon(std::size_t num_registers) {
    return {std::vector<ApproxLang>(num_registers, ApproxLang::singleton("")),
            std::vector<ApproxLang>(num_registers + 1, ApproxLang::singleton(""))};
}

SymWord gapped_image(const Update& f) {
    SymWord w{Sym::gap(0)};
    for (std::size_t x = 0; x < f.num_registers(); ++x) {
        w.insert(w.end(), f.images[x].begin(), f.images[x].end());
        w.push_back(Sym::gap(x + 1));
    }
    return w;
}

SymWord gap_extract(const SymWord& w, std::size_t i) {
    // Positions of x_1..x_k, which must occur in order.
    std::vector<std::size_t> at;
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (!w[p].is_reg()) { continue; }
        if (w[p].index() != at.size()) { fail(ErrorKind::InvalidArgument, "gap_extract: registers out of order"); }
        at.push_back(p);
    }
    const std::size_t k = at.size();
    if (i == 0) { return SymWord(w.begin(), w.begin() + static_cast<long>(k == 0 ? w.size() : at[0])); }
    if (i > k) { return {}; }
    const std::size_t from = at[i - 1] + 1;
    const std::size_t to = (i < k) ? at[i] : w.size();
    return SymWord(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
}

GapUpdate gap_update(const Update& f) {
    if (!is_flow_normalized(f)) { fail(ErrorKind::Precondition, "gap_update: update is not flow-normalized"); }
    const SymWord eff = gapped_image(f);
    GapUpdate out;
    for (std::size_t j = 0; j <= f.num_registers(); ++j) { out.push_back(gap_extract(eff, j)); }
    return out;
}

Valuation gap_valuation(const Sst& sst, const Run& run, std::size_t i) {
    if (i > run.size()) { fail(ErrorKind::InvalidArgument, "gap_valuation: position out of range"); }
    const SymWord chi = image_of_chi(run_update(sst, run, i, run.size()));
    Valuation nu;
    for (std::size_t j = 0; j <= sst.num_registers(); ++j) { nu.push_back(letters_of(gap_extract(chi, j))); }
    return nu;
}

namespace {

std::vector<ApproxLang> forward_step(const std::vector<ApproxLang>& regs, const Update& f, std::size_t alpha) {
    std::vector<ApproxLang> out;
    out.reserve(f.num_registers());
    for (const SymWord& img : f.images) { out.push_back(closure_subst(regs, {}, img, alpha)); }
    return out;
}

std::vector<ApproxLang> backward_step(const std::vector<ApproxLang>& gaps, const GapUpdate& fbar, std::size_t alpha) {
    std::vector<ApproxLang> out;
    out.reserve(fbar.size());
    for (const SymWord& img : fbar) { out.push_back(closure_subst({}, gaps, img, alpha)); }
    return out;
}

using LangVec = std::vector<ApproxLang>;

} // namespace

AnnotatedSst annotate_approximants(const Sst& input, std::size_t alpha) {
    for (const Transition& t : input.transitions) {
        if (!is_flow_normalized(t.update)) {
            fail(ErrorKind::Precondition, "annotate: " + input.transition_text(t) + " is not flow-normalized");
        }
    }
    const Sst sst = trim(input);
    const std::size_t n = sst.num_states();
    const std::size_t m = sst.num_registers();
    const Approximant eps = Approximant::epsilon(m);
    std::vector<GapUpdate> fbar;
    for (const Transition& t : sst.transitions) { fbar.push_back(gap_update(t.update)); }
    const auto out_edges = outgoing(sst);

    // Register annotations reachable forward, gap annotations reachable backward.
    std::vector<std::set<LangVec>> fwd(n), bwd(n);
    std::deque<std::pair<StateId, LangVec>> work;
    for (StateId q = 0; q < n; ++q) {
        if (sst.initial[q] && fwd[q].insert(eps.regs).second) { work.emplace_back(q, eps.regs); }
    }
    while (!work.empty()) {
        auto [q, regs] = work.front();
        work.pop_front();
        for (std::size_t ti : out_edges[q]) {
            const Transition& t = sst.transitions[ti];
            LangVec next = forward_step(regs, t.update, alpha);
            if (fwd[t.target].insert(next).second) { work.emplace_back(t.target, std::move(next)); }
        }
    }
    std::vector<std::vector<std::size_t>> in_edges(n);
    for (std::size_t ti = 0; ti < sst.transitions.size(); ++ti) { in_edges[sst.transitions[ti].target].push_back(ti); }
    for (StateId q = 0; q < n; ++q) {
        if (sst.final[q] && bwd[q].insert(eps.gaps).second) { work.emplace_back(q, eps.gaps); }
    }
    while (!work.empty()) {
        auto [q, gaps] = work.front();
        work.pop_front();
        for (std::size_t ti : in_edges[q]) {
            const Transition& t = sst.transitions[ti];
            LangVec prev = backward_step(gaps, fbar[ti], alpha);
            if (bwd[t.source].insert(prev).second) { work.emplace_back(t.source, std::move(prev)); }
        }
    }

    // Product of both directions. Every pair is useful: any prefix reaching q can be followed by
    // any suffix leaving it. State (q, i, j) gets index base[q] + i * |bwd[q]| + j, which is also
    // the annotation order used for names.
    std::vector<std::vector<LangVec>> fwd_list(n), bwd_list(n);
    std::vector<std::size_t> base(n + 1, 0);
    for (StateId q = 0; q < n; ++q) {
        fwd_list[q].assign(fwd[q].begin(), fwd[q].end());
        bwd_list[q].assign(bwd[q].begin(), bwd[q].end());
        base[q + 1] = base[q] + fwd_list[q].size() * bwd_list[q].size();
    }
    auto position = [](const std::vector<LangVec>& list, const LangVec& v) {
        return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), v) - list.begin());
    };

    AnnotatedSst result;
    result.alpha = alpha;
    Sst& out = result.machine;
    out.input_alphabet = sst.input_alphabet;
    out.output_alphabet = sst.output_alphabet;
    out.registers = sst.registers;
    out.output_register = sst.output_register;
    for (StateId q = 0; q < n; ++q) {
        std::size_t k = 0;
        for (const LangVec& regs : fwd_list[q]) {
            for (const LangVec& gaps : bwd_list[q]) {
                out.add_state(sst.states[q] + "@" + std::to_string(k++), sst.initial[q] && regs == eps.regs,
                              sst.final[q] && gaps == eps.gaps);
                result.origin.push_back(sst.states[q]);
                result.annotation.push_back({regs, gaps});
            }
        }
    }
    for (std::size_t ti = 0; ti < sst.transitions.size(); ++ti) {
        const Transition& t = sst.transitions[ti];
        const StateId p = t.source, q = t.target;
        std::vector<std::size_t> next_regs, prev_gaps;
        for (const LangVec& regs : fwd_list[p]) { next_regs.push_back(position(fwd_list[q], forward_step(regs, t.update, alpha))); }
        for (const LangVec& gaps : bwd_list[q]) { prev_gaps.push_back(position(bwd_list[p], backward_step(gaps, fbar[ti], alpha))); }
        for (std::size_t i = 0; i < next_regs.size(); ++i) {
            for (std::size_t j = 0; j < prev_gaps.size(); ++j) {
                out.transitions.push_back({base[p] + i * bwd_list[p].size() + prev_gaps[j], t.label, t.update,
                                           base[q] + next_regs[i] * bwd_list[q].size() + j});
            }
        }
    }

    result = trim(result);
    canonicalize(result);
    return result;
}

void canonicalize(AnnotatedSst& a) {
    const auto old_to_new = canonicalize(a.machine);
    std::vector<std::string> origin(old_to_new.size());
    std::vector<Approximant> annotation(old_to_new.size());
    for (StateId q = 0; q < old_to_new.size(); ++q) {
        origin[old_to_new[q]] = std::move(a.origin[q]);
        annotation[old_to_new[q]] = std::move(a.annotation[q]);
    }
    a.origin = std::move(origin);
    a.annotation = std::move(annotation);
}

AnnotatedSst trim(const AnnotatedSst& a) {
    std::vector<StateId> kept;
    AnnotatedSst out;
    out.alpha = a.alpha;
    out.machine = restrict_states(a.machine, useful_states(a.machine), &kept);
    for (StateId q : kept) {
        out.origin.push_back(a.origin[q]);
        out.annotation.push_back(a.annotation[q]);
    }
    return out;
}

namespace {

/// Register valuations at every position of a run.
std::vector<Valuation> forward_valuations(const Sst& sst, const Run& run) {
    std::vector<Valuation> nus{Valuation(sst.num_registers())};
    for (std::size_t ti : run.steps) { nus.push_back(apply_update(nus.back(), sst.transitions[ti].update)); }
    return nus;
}

/// Gap valuations at every position of a run.
std::vector<Valuation> backward_valuations(const Sst& sst, const Run& run) {
    std::vector<Valuation> gaps(run.size() + 1);
    Update suffix = Update::identity(sst.num_registers());
    for (std::size_t i = run.size() + 1; i-- > 0;) {
        if (i < run.size()) { suffix = compose_updates(sst.transitions[run.steps[i]].update, suffix); }
        const SymWord chi = image_of_chi(suffix);
        for (std::size_t j = 0; j <= sst.num_registers(); ++j) { gaps[i].push_back(letters_of(gap_extract(chi, j))); }
    }
    return gaps;
}

} // namespace

AdmitsVerdict check_admits(const AnnotatedSst& a, std::size_t alpha, std::size_t max_len) {
    const Sst& sst = a.machine;
    for (const std::string& u : well_formed_inputs(sst.input_alphabet, max_len)) {
        const auto rs = runs(sst, u);
        for (std::size_t r = 0; r < rs.size(); ++r) {
            const auto regs = forward_valuations(sst, rs[r]);
            const auto gaps = backward_valuations(sst, rs[r]);
            for (std::size_t i = 0; i <= rs[r].size(); ++i) {
                const Approximant& expected = a.annotation.at(state_at(sst, rs[r], i));
                for (std::size_t x = 0; x < sst.num_registers(); ++x) {
                    const ApproxLang actual = closure_word(regs[i][x], alpha);
                    if (actual != expected.regs.at(x)) {
                        return {false, u, r, i, sst.registers[x], expected.regs[x].to_string(), actual.to_string()};
                    }
                }
                for (std::size_t j = 0; j <= sst.num_registers(); ++j) {
                    const ApproxLang actual = closure_word(gaps[i][j], alpha);
                    if (actual != expected.gaps.at(j)) {
                        return {false, u, r, i, "y" + std::to_string(j), expected.gaps[j].to_string(), actual.to_string()};
                    }
                }
            }
        }
    }
    return {};
}

TightnessReport probe_tightness(const AnnotatedSst& a, std::size_t beta, std::size_t max_len, std::size_t max_pump) {
    const Sst& sst = a.machine;
    std::vector<char> seen(sst.num_states(), 0), tight(sst.num_states(), 0);
    auto matches = [&](const Approximant& ann, const Valuation& regs, const Valuation& gaps) {
        for (std::size_t x = 0; x < regs.size(); ++x) {
            if (closure_word(regs[x], beta) != ann.regs[x]) { return false; }
        }
        for (std::size_t j = 0; j < gaps.size(); ++j) {
            if (closure_word(gaps[j], beta) != ann.gaps[j]) { return false; }
        }
        return true;
    };
    for (const std::string& u : well_formed_inputs(sst.input_alphabet, max_len)) {
        for (const Run& run : runs(sst, u)) {
            const auto loops = find_loops(sst, run);
            for (std::size_t i = 0; i <= run.size(); ++i) {
                const StateId s = state_at(sst, run, i);
                seen[s] = 1;
                if (tight[s]) { continue; }
                // Greedy disjoint loops that do not straddle position i.
                std::vector<Interval> chosen;
                std::size_t before = 0;
                for (const Interval& iv : loops) {
                    if (iv.begin < i && iv.end > i) { continue; }
                    if (!chosen.empty() && chosen.back().end > iv.begin) { continue; }
                    chosen.push_back(iv);
                    if (iv.end <= i) { before += iv.end - iv.begin; }
                }
                for (std::size_t n = 1; n <= max_pump && !tight[s]; ++n) {
                    const Run pumped = pump(sst, run, chosen, n);
                    const std::size_t at = i + (n - 1) * before;
                    if (matches(a.annotation[s], register_valuation(sst, pumped, at), gap_valuation(sst, pumped, at))) {
                        tight[s] = 1;
                    }
                }
            }
        }
    }
    TightnessReport report;
    for (StateId s = 0; s < sst.num_states(); ++s) {
        if (!seen[s]) { continue; }
        ++report.states_seen;
        if (tight[s]) {
            ++report.states_tight;
        } else {
            report.unresolved.push_back(s);
        }
    }
    return report;
}

} // namespace sstlab
