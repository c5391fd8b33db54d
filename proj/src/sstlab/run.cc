#include "sstlab/run.hh"

#include <algorithm>
#include <set>
#include <utility>

#include "sstlab/error.hh"

namespace sstlab {

void check_input(const std::string& input) {
    if (input.empty()) { fail(ErrorKind::InvalidArgument, "input is empty"); }
    if (input.back() != kMarker) { fail(ErrorKind::InvalidArgument, "input \"" + input + "\" does not end with '$'"); }
    if (input.find(kMarker) != input.size() - 1) {
        fail(ErrorKind::InvalidArgument, "input \"" + input + "\" has '$' before its end");
    }
}

bool is_run(const Sst& sst, const Run& run) {
    if (run.start >= sst.num_states()) { return false; }
    StateId q = run.start;
    for (std::size_t ti : run.steps) {
        if (ti >= sst.transitions.size() || sst.transitions[ti].source != q) { return false; }
        q = sst.transitions[ti].target;
    }
    return true;
}

StateId state_at(const Sst& sst, const Run& run, std::size_t i) {
    if (i > run.size()) { fail(ErrorKind::InvalidArgument, "run position out of range"); }
    return i == 0 ? run.start : sst.transitions.at(run.steps[i - 1]).target;
}

std::string run_input(const Sst& sst, const Run& run) {
    std::string w;
    for (std::size_t ti : run.steps) { w.push_back(sst.transitions.at(ti).label); }
    return w;
}

Update run_update(const Sst& sst, const Run& run, std::size_t begin, std::size_t end) {
    if (begin > end || end > run.size()) { fail(ErrorKind::InvalidArgument, "run interval out of range"); }
    Update u = Update::identity(sst.num_registers());
    for (std::size_t i = begin; i < end; ++i) { u = compose_updates(u, sst.transitions.at(run.steps[i]).update); }
    return u;
}

Update run_update(const Sst& sst, const Run& run) { return run_update(sst, run, 0, run.size()); }

std::vector<Run> runs(const Sst& sst, const std::string& input) {
    check_input(input);
    const auto out = outgoing(sst);
    std::vector<Run> result;
    Run current;
    // Depth-first over transitions in canonical order.
    auto dfs = [&](auto&& self, StateId q, std::size_t pos) -> void {
        if (pos == input.size()) {
            if (sst.final[q]) { result.push_back(current); }
            return;
        }
        for (std::size_t ti : out[q]) {
            if (sst.transitions[ti].label != input[pos]) { continue; }
            current.steps.push_back(ti);
            self(self, sst.transitions[ti].target, pos + 1);
            current.steps.pop_back();
        }
    };
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (!sst.initial[q]) { continue; }
        current.start = q;
        dfs(dfs, q, 0);
    }
    return result;
}

std::string output_of(const Sst& sst, const Run& run) {
    return register_valuation(sst, run, run.size()).at(sst.output_register);
}

std::vector<std::string> eval(const Sst& sst, const std::string& input) {
    check_input(input);
    const auto out = outgoing(sst);
    std::set<std::pair<StateId, Valuation>> configs;
    const Valuation empty(sst.num_registers());
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (sst.initial[q]) { configs.insert({q, empty}); }
    }
    for (char a : input) {
        std::set<std::pair<StateId, Valuation>> next;
        for (const auto& [q, nu] : configs) {
            for (std::size_t ti : out[q]) {
                const Transition& t = sst.transitions[ti];
                if (t.label == a) { next.insert({t.target, apply_update(nu, t.update)}); }
            }
        }
        configs = std::move(next);
    }
    std::set<std::string> outputs;
    for (const auto& [q, nu] : configs) {
        if (sst.final[q]) { outputs.insert(nu.at(sst.output_register)); }
    }
    return {outputs.begin(), outputs.end()};
}

std::size_t count_runs(const Sst& sst, const std::string& input) {
    check_input(input);
    std::vector<std::size_t> count(sst.num_states(), 0);
    for (StateId q = 0; q < sst.num_states(); ++q) { count[q] = sst.initial[q] ? 1 : 0; }
    for (char a : input) {
        std::vector<std::size_t> next(sst.num_states(), 0);
        for (const Transition& t : sst.transitions) {
            if (t.label == a) { next[t.target] += count[t.source]; }
        }
        count = std::move(next);
    }
    std::size_t total = 0;
    for (StateId q = 0; q < sst.num_states(); ++q) { total += sst.final[q] ? count[q] : 0; }
    return total;
}

Valuation register_valuation(const Sst& sst, const Run& run, std::size_t i) {
    if (i > run.size()) { fail(ErrorKind::InvalidArgument, "valuation position out of range"); }
    Valuation nu(sst.num_registers());
    for (std::size_t k = 0; k < i; ++k) { nu = apply_update(nu, sst.transitions.at(run.steps[k]).update); }
    return nu;
}

std::vector<std::string> well_formed_inputs(const std::string& alphabet, std::size_t max_len) {
    std::string letters;
    for (char c : alphabet) {
        if (c != kMarker) { letters.push_back(c); }
    }
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    std::vector<std::string> result;
    std::vector<std::string> layer{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (const std::string& w : layer) { result.push_back(w + kMarker); }
        if (len == max_len) { break; }
        std::vector<std::string> next;
        next.reserve(layer.size() * letters.size());
        for (const std::string& w : layer) {
            for (char c : letters) { next.push_back(w + c); }
        }
        layer = std::move(next);
    }
    return result;
}

KValuedVerdict is_k_valued_bounded(const Sst& sst, std::size_t k, std::size_t max_len) {
    if (k == 0) { fail(ErrorKind::InvalidArgument, "k must be positive"); }
    for (const std::string& u : well_formed_inputs(sst.input_alphabet, max_len)) {
        auto outputs = eval(sst, u);
        if (outputs.size() > k) { return {false, u, std::move(outputs)}; }
    }
    return {};
}

std::vector<Interval> find_loops(const Sst& sst, const Run& run) {
    std::vector<Interval> loops;
    for (std::size_t i = 0; i < run.size(); ++i) {
        Flow f = Flow::identity(sst.num_registers());
        const StateId q = state_at(sst, run, i);
        for (std::size_t j = i + 1; j <= run.size(); ++j) {
            f = compose_flows(f, flow_of(sst.transitions.at(run.steps[j - 1]).update));
            if (state_at(sst, run, j) == q && is_idempotent_flow(f)) { loops.push_back({i, j}); }
        }
    }
    return loops;
}

Run pump(const Sst& sst, const Run& run, const std::vector<Interval>& loops, std::size_t n) {
    if (n == 0) { fail(ErrorKind::InvalidArgument, "pump: n must be positive"); }
    std::vector<Interval> sorted = loops;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Interval& iv = sorted[i];
        if (iv.begin >= iv.end || iv.end > run.size()) { fail(ErrorKind::InvalidArgument, "pump: bad interval"); }
        if (i > 0 && sorted[i - 1].end > iv.begin) { fail(ErrorKind::InvalidArgument, "pump: overlapping loops"); }
        const Flow f = flow_of(run_update(sst, run, iv.begin, iv.end));
        if (state_at(sst, run, iv.begin) != state_at(sst, run, iv.end) || !is_idempotent_flow(f)) {
            fail(ErrorKind::InvalidArgument, "pump: interval is not a loop");
        }
    }
    Run out{run.start, {}};
    std::size_t pos = 0;
    for (const Interval& iv : sorted) {
        out.steps.insert(out.steps.end(), run.steps.begin() + pos, run.steps.begin() + iv.begin);
        for (std::size_t r = 0; r < n; ++r) {
            out.steps.insert(out.steps.end(), run.steps.begin() + iv.begin, run.steps.begin() + iv.end);
        }
        pos = iv.end;
    }
    out.steps.insert(out.steps.end(), run.steps.begin() + pos, run.steps.end());
    return out;
}

} // namespace sstlab
