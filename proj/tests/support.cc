#include "support.hh"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "sstlab/format.hh"

namespace testing {

using namespace sstlab;

SymWord sw(const std::string& text) {
    SymWord out;
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
        if (tok.size() > 1 && tok[0] == 'x') {
            out.push_back(Sym::reg(std::stoul(tok.substr(1)) - 1));
        } else if (tok.size() > 1 && tok[0] == 'y') {
            out.push_back(Sym::gap(std::stoul(tok.substr(1))));
        } else {
            for (char c : tok) { out.push_back(Sym::letter(c)); }
        }
    }
    return out;
}

Update upd(std::vector<std::string> images) {
    Update u;
    for (const std::string& img : images) { u.images.push_back(sw(img)); }
    return u;
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(SSTLAB_CORPUS_DIR)) {
        if (e.path().extension() == ".sst") { out.push_back(e.path().filename().string()); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Sst load_corpus(const std::string& name) {
    std::ifstream in(std::string(SSTLAB_CORPUS_DIR) + "/" + name);
    if (!in) { throw std::runtime_error("missing corpus file " + name); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sst(ss.str());
}

Update random_update(std::mt19937_64& rng, std::size_t m, std::size_t max_letters, const std::string& letters) {
    std::vector<std::size_t> regs(m);
    for (std::size_t i = 0; i < m; ++i) { regs[i] = i; }
    std::shuffle(regs.begin(), regs.end(), rng);
    Update u;
    u.images.resize(m);
    std::uniform_int_distribution<std::size_t> target(0, m);  // m drops the register
    for (std::size_t r : regs) {
        const std::size_t t = target(rng);
        if (t < m) { u.images[t].push_back(Sym::reg(r)); }
    }
    std::uniform_int_distribution<std::size_t> count(0, max_letters);
    std::uniform_int_distribution<std::size_t> pick_reg(0, m - 1), pick_letter(0, letters.size() - 1);
    for (std::size_t n = count(rng); n > 0; --n) {
        SymWord& img = u.images[pick_reg(rng)];
        std::uniform_int_distribution<std::size_t> at(0, img.size());
        img.insert(img.begin() + static_cast<long>(at(rng)), Sym::letter(letters[pick_letter(rng)]));
    }
    return u;
}

Sst random_machine(std::mt19937_64& rng, const RandomSpec& spec) {
    std::uniform_int_distribution<std::size_t> nstates(1, spec.max_work_states), nregs(1, spec.max_registers);
    const std::size_t n = nstates(rng), m = nregs(rng);
    Sst sst;
    sst.input_alphabet = spec.alphabet + "$";
    sst.output_alphabet = spec.output_alphabet;
    for (std::size_t i = 0; i < m; ++i) { sst.registers.push_back("x" + std::to_string(i + 1)); }
    std::uniform_int_distribution<std::size_t> pick_out(0, m - 1);
    sst.output_register = pick_out(rng);
    for (std::size_t q = 0; q < n; ++q) { sst.add_state("p" + std::to_string(q), q == 0, false); }
    const StateId sink = sst.add_state("qf", false, true);
    std::uniform_int_distribution<std::size_t> pick_state(0, n - 1), fanout(1, 2), coin(0, 3);
    for (StateId q = 0; q < n; ++q) {
        for (char a : spec.alphabet) {
            for (std::size_t k = fanout(rng); k > 0; --k) {
                sst.transitions.push_back({q, a, random_update(rng, m, spec.max_letters, spec.output_alphabet), pick_state(rng)});
            }
        }
        // Most working states accept; state 0 always does, so the domain is nonempty.
        if (q == 0 || coin(rng) != 0) {
            sst.transitions.push_back({q, kMarker, random_update(rng, m, spec.max_letters, spec.output_alphabet), sink});
        }
    }
    canonicalize(sst);
    return trim(sst);
}

namespace {

std::vector<std::string> step(const std::vector<std::string>& nu, const Update& f) {
    std::vector<std::string> out(nu.size());
    for (std::size_t x = 0; x < f.images.size(); ++x) {
        for (const Sym& s : f.images[x]) { out[x] += s.is_reg() ? nu[s.index()] : std::string(1, s.as_letter()); }
    }
    return out;
}

template <class Visit>
void brute_runs(const Sst& sst, const std::string& input, Visit&& visit) {
    auto rec = [&](auto&& self, StateId q, std::size_t pos, const std::vector<std::string>& nu) -> void {
        if (pos == input.size()) {
            if (sst.final[q]) { visit(nu); }
            return;
        }
        for (const Transition& t : sst.transitions) {
            if (t.source == q && t.label == input[pos]) { self(self, t.target, pos + 1, step(nu, t.update)); }
        }
    };
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (sst.initial[q]) { rec(rec, q, 0, std::vector<std::string>(sst.num_registers())); }
    }
}

} // namespace

std::set<std::string> brute_eval(const Sst& sst, const std::string& input) {
    std::set<std::string> out;
    brute_runs(sst, input, [&](const std::vector<std::string>& nu) { out.insert(nu[sst.output_register]); });
    return out;
}

std::size_t brute_count_runs(const Sst& sst, const std::string& input) {
    std::size_t n = 0;
    brute_runs(sst, input, [&](const std::vector<std::string>&) { ++n; });
    return n;
}

bool brute_member(const BruteLang& l, const std::string& w) {
    switch (l.kind) {
    case BruteLang::Empty: return false;
    case BruteLang::Universal: return true;
    case BruteLang::Single: return w == l.u;
    case BruteLang::Periodic: {
        // w = u^k v
        std::string cur;
        while (cur.size() + l.v.size() <= w.size()) {
            if (cur + l.v == w) { return true; }
            cur += l.u;
        }
        return false;
    }
    }
    return false;
}

std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) { continue; }
        for (char c : alphabet) { out.push_back(out[i] + c); }
    }
    return out;
}

std::vector<BruteLang> brute_lattice(std::size_t alpha, const std::string& alphabet) {
    std::vector<BruteLang> out{{BruteLang::Empty, "", ""}, {BruteLang::Universal, "", ""}};
    for (const std::string& w : all_words(alphabet, alpha)) {
        out.push_back({BruteLang::Single, w, ""});
        if (w.empty()) { continue; }
        // Primitive: not a proper power of a shorter word.
        bool primitive = true;
        for (std::size_t d = 1; d < w.size() && primitive; ++d) {
            if (w.size() % d != 0) { continue; }
            std::string power;
            while (power.size() < w.size()) { power += w.substr(0, d); }
            primitive = power != w;
        }
        if (!primitive) { continue; }
        for (std::size_t r = 0; r < w.size(); ++r) { out.push_back({BruteLang::Periodic, w, w.substr(0, r)}); }
    }
    return out;
}

std::vector<BruteLang> brute_supersets(const std::vector<BruteLang>& lattice, const std::vector<std::string>& sample) {
    std::vector<BruteLang> out;
    for (const BruteLang& l : lattice) {
        if (std::all_of(sample.begin(), sample.end(), [&](const std::string& w) { return brute_member(l, w); })) {
            out.push_back(l);
        }
    }
    return out;
}

bool brute_subset(const BruteLang& l1, const BruteLang& l2, std::size_t max_len, const std::string& alphabet) {
    for (const std::string& w : all_words(alphabet, max_len)) {
        if (brute_member(l1, w) && !brute_member(l2, w)) { return false; }
    }
    return true;
}

bool same(const BruteLang& b, const ApproxLang& l) {
    switch (b.kind) {
    case BruteLang::Empty: return l.is_empty();
    case BruteLang::Universal: return l.is_universal();
    case BruteLang::Single: return l.is_singleton() && l.word() == b.u;
    case BruteLang::Periodic: return l.is_periodic() && l.word() == b.u && l.residue() == b.v;
    }
    return false;
}

bool fits_pumping_pattern(const std::vector<std::string>& w, std::size_t max_blocks) {
    if (w.size() != 4) { throw std::invalid_argument("fits_pumping_pattern needs w_1..w_4"); }
    const std::string &w1 = w[0], &w2 = w[1], &w3 = w[2], &w4 = w[3];
    // With L letters inserted so far, positions in w3 and w4 are i1 + 2L and i1 + 3L.
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
    auto rec = [&](auto&& self, std::size_t i1, std::size_t i2, std::size_t blocks) -> bool {
        const std::size_t L = i2 - i1, i3 = i1 + 2 * L, i4 = i1 + 3 * L;
        if (i2 > w2.size() || i3 > w3.size() || i4 > w4.size()) { return false; }
        if (i1 == w1.size() && i2 == w2.size() && i3 == w3.size() && i4 == w4.size()) { return true; }
        const auto key = std::make_tuple(i1, i2, blocks);
        if (auto it = memo.find(key); it != memo.end()) { return it->second; }
        bool ok = false;
        if (i1 < w1.size() && i2 < w2.size() && i3 < w3.size() && i4 < w4.size() && w1[i1] == w2[i2] &&
            w1[i1] == w3[i3] && w1[i1] == w4[i4]) {
            ok = self(self, i1 + 1, i2 + 1, blocks);
        }
        for (std::size_t len = 1; !ok && blocks < max_blocks && i2 + len <= w2.size(); ++len) {
            const std::string v = w2.substr(i2, len);
            if (w3.compare(i3, 2 * len, v + v) != 0 || w4.compare(i4, 3 * len, v + v + v) != 0) { continue; }
            ok = self(self, i1, i2 + len, blocks + 1);
        }
        memo[key] = ok;
        return ok;
    };
    return rec(rec, 0, 0, 0);
}

} // namespace testing
