#include "sstlab/normalize.hh"

#include <algorithm>
#include <deque>
#include <map>

#include "sstlab/error.hh"

namespace sstlab {

long Renaming::image(std::size_t reg) const {
    auto it = std::find(order.begin(), order.end(), reg);
    return it == order.end() ? -1 : static_cast<long>(it - order.begin());
}

bool is_non_erasing(const Update& u) {
    std::vector<bool> seen(u.num_registers(), false);
    for (const Sym& s : image_of_chi(u)) {
        if (s.is_reg() && s.index() < seen.size()) { seen[s.index()] = true; }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool is_non_permuting(const Update& u) {
    std::size_t expected = 0;
    for (const Sym& s : image_of_chi(u)) {
        if (!s.is_reg()) { continue; }
        if (s.index() != expected) { return false; }
        ++expected;
    }
    return true;
}

Renaming induced_renaming(const Update& f, const Renaming& after) {
    Renaming r;
    r.num_registers = f.num_registers();
    for (std::size_t reg : after.order) {
        for (const Sym& s : f.images.at(reg)) {
            if (s.is_reg()) { r.order.push_back(s.index()); }
        }
    }
    return r;
}

Update rename_update(const Update& f, const Renaming& before, const Renaming& after) {
    const std::size_t m = f.num_registers();
    if (before.num_registers != m || after.num_registers != m) {
        fail(ErrorKind::Precondition, "rename_update: renaming over a different register set");
    }
    const Renaming expected = induced_renaming(f, after);
    std::vector<std::size_t> dom_expected = expected.order, dom_before = before.order;
    std::sort(dom_expected.begin(), dom_expected.end());
    std::sort(dom_before.begin(), dom_before.end());
    if (dom_expected != dom_before) {
        fail(ErrorKind::Precondition, "rename_update: renaming domain differs from the registers flowing to the target");
    }
    if (expected.order != before.order) {
        fail(ErrorKind::Precondition, "rename_update: renaming does not follow the occurrence order");
    }
    const std::size_t k_before = before.dlen();
    const std::size_t k_after = after.dlen();
    Update out;
    out.images.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < k_after) {
            for (const Sym& s : f.images[after.order[i]]) {
                out.images[i].push_back(s.is_reg() ? Sym::reg(static_cast<std::size_t>(before.image(s.index()))) : s);
            }
        } else if (i + k_before - k_after < m) {
            out.images[i] = {Sym::reg(i + k_before - k_after)};
        }
    }
    // When more registers are live after than before, the shift above leaves the last
    // k_after - k_before idle registers unplaced. They hold ε, so they go at the very end.
    for (std::size_t j = m - (k_after > k_before ? k_after - k_before : 0); j < m; ++j) {
        out.images[m - 1].push_back(Sym::reg(j));
    }
    return out;
}

std::string renaming_text(const Renaming& r, const std::vector<std::string>& register_names) {
    std::string out = "[";
    for (std::size_t i = 0; i < r.order.size(); ++i) {
        if (i > 0) { out += '.'; }
        out += register_names.at(r.order[i]);
    }
    return out + "]";
}

Sst flow_normalize(const Sst& sst) {
    const std::size_t m = sst.num_registers();
    Sst out;
    out.input_alphabet = sst.input_alphabet;
    out.output_alphabet = sst.output_alphabet;
    out.registers = sst.registers;
    out.output_register = 0;

    std::map<std::pair<StateId, Renaming>, StateId> index;
    std::deque<std::pair<StateId, Renaming>> work;
    auto intern = [&](StateId q, const Renaming& r) {
        auto [it, inserted] = index.try_emplace({q, r}, out.num_states());
        if (inserted) {
            out.add_state(sst.states[q] + renaming_text(r, sst.registers), sst.initial[q] != 0, false);
            work.emplace_back(q, r);
        }
        return it->second;
    };

    const Renaming pi_out{{sst.output_register}, m};
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (sst.final[q]) { out.final[intern(q, pi_out)] = 1; }
    }
    std::vector<std::vector<std::size_t>> incoming(sst.num_states());
    for (std::size_t i = 0; i < sst.transitions.size(); ++i) { incoming[sst.transitions[i].target].push_back(i); }

    // Backward: the renaming at a target determines the one at the source.
    while (!work.empty()) {
        const auto [q_after, after] = work.front();
        work.pop_front();
        const StateId target = index.at({q_after, after});
        for (std::size_t ti : incoming[q_after]) {
            const Transition& t = sst.transitions[ti];
            const Renaming before = induced_renaming(t.update, after);
            const StateId source = intern(t.source, before);
            out.transitions.push_back({source, t.label, rename_update(t.update, before, after), target});
        }
    }
    out = trim(out);
    canonicalize(out);
    return out;
}

} // namespace sstlab
