#include "sstlab/lattice.hh"

#include <algorithm>
#include <set>

#include "sstlab/error.hh"

namespace sstlab {

ApproxLang ApproxLang::periodic(std::string u, std::string v) {
    if (u.empty() || !is_primitive(u)) { fail(ErrorKind::InvalidArgument, "periodic: \"" + u + "\" is not primitive"); }
    if (v.size() >= u.size() || u.compare(0, v.size(), v) != 0) {
        fail(ErrorKind::InvalidArgument, "periodic: \"" + v + "\" is not a strict prefix of \"" + u + "\"");
    }
    return ApproxLang(Kind::Periodic, std::move(u), std::move(v));
}

bool ApproxLang::fits(std::size_t alpha) const {
    switch (kind_) {
    case Kind::Singleton:
    case Kind::Periodic: return word_.size() <= alpha;
    default: return true;
    }
}

std::string ApproxLang::to_string() const {
    switch (kind_) {
    case Kind::Empty: return "EMPTY";
    case Kind::Universal: return "ANY";
    case Kind::Singleton: return "\"" + word_ + "\"";
    case Kind::Periodic: return "(" + word_ + ")*" + residue_;
    }
    return {};
}

ApproxLang ApproxLang::parse(const std::string& text) {
    if (text == "EMPTY") { return empty(); }
    if (text == "ANY") { return universal(); }
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        return singleton(text.substr(1, text.size() - 2));
    }
    const auto close = text.find(")*");
    if (!text.empty() && text.front() == '(' && close != std::string::npos) {
        try {
            return periodic(text.substr(1, close - 1), text.substr(close + 2));
        } catch (const Error& e) {
            fail(ErrorKind::Parse, e.what());
        }
    }
    fail(ErrorKind::Parse, "not an approximant language: " + text);
}

std::size_t period(const std::string& w) {
    if (w.empty()) { fail(ErrorKind::InvalidArgument, "period of the empty word"); }
    std::vector<std::size_t> border(w.size(), 0);
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t k = border[i - 1];
        while (k > 0 && w[i] != w[k]) { k = border[k - 1]; }
        border[i] = (w[i] == w[k]) ? k + 1 : 0;
    }
    return w.size() - border.back();
}

bool is_primitive(const std::string& w) {
    const std::size_t p = period(w);
    return p == w.size() || w.size() % p != 0;
}

std::string primitive_root(const std::string& w) {
    if (w.empty()) { return w; }
    const std::size_t p = period(w);
    return (w.size() % p == 0) ? w.substr(0, p) : w;
}

ApproxLang closure_word(const std::string& w, std::size_t alpha) {
    if (w.size() <= alpha) { return ApproxLang::singleton(w); }
    const std::size_t p = period(w);
    if (p > alpha) { return ApproxLang::universal(); }
    // A second period q ≤ α that is not a multiple of p gives an incomparable periodic superset;
    // the two meet in {w} alone.
    for (std::size_t q = p + 1; q <= alpha && q < w.size(); ++q) {
        if (q % p != 0 && w.compare(0, w.size() - q, w, q, w.size() - q) == 0) { return ApproxLang::singleton(w); }
    }
    return ApproxLang::periodic(w.substr(0, p), w.substr(0, w.size() % p));
}

bool contains(const ApproxLang& l, const std::string& w) {
    switch (l.kind()) {
    case ApproxLang::Kind::Empty: return false;
    case ApproxLang::Kind::Universal: return true;
    case ApproxLang::Kind::Singleton: return l.word() == w;
    case ApproxLang::Kind::Periodic: {
        const std::string& u = l.word();
        if (w.size() % u.size() != l.residue().size()) { return false; }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != u[i % u.size()]) { return false; }
        }
        return true;
    }
    }
    return false;
}

bool subset(const ApproxLang& l1, const ApproxLang& l2) {
    if (l1.is_empty() || l2.is_universal()) { return true; }
    if (l1.is_singleton()) { return contains(l2, l1.word()); }
    // l1 is infinite from here on.
    if (l1.is_universal()) { return false; }
    return l2.is_periodic() && l1 == l2;
}

namespace {

constexpr std::size_t kDead = SIZE_MAX;

/// Step of the automaton of u*v: the position in u, or kDead.
std::size_t step(const std::string& u, std::size_t pos, char c) {
    if (pos == kDead || u[pos] != c) { return kDead; }
    return (pos + 1) % u.size();
}

std::size_t run_word(const std::string& u, std::size_t pos, const std::string& w) {
    for (char c : w) { pos = step(u, pos, c); }
    return pos;
}

struct Block {
    std::string word;
    bool star{false};
};

void append_blocks(std::vector<Block>& blocks, const ApproxLang& l) {
    if (l.is_singleton()) {
        blocks.push_back({l.word(), false});
    } else {
        blocks.push_back({l.word(), true});
        blocks.push_back({l.residue(), false});
    }
}

/// Every word of the block pattern lies in the periodic language p.
bool pattern_within(const std::vector<Block>& blocks, const ApproxLang& p) {
    const std::string& u = p.word();
    std::set<std::size_t> states{0};
    for (const Block& b : blocks) {
        if (!b.star) {
            std::set<std::size_t> next;
            for (std::size_t s : states) { next.insert(run_word(u, s, b.word)); }
            states = std::move(next);
            continue;
        }
        std::vector<std::size_t> frontier(states.begin(), states.end());
        while (!frontier.empty()) {
            const std::size_t s = run_word(u, frontier.back(), b.word);
            frontier.pop_back();
            if (states.insert(s).second) { frontier.push_back(s); }
        }
    }
    return std::all_of(states.begin(), states.end(), [&](std::size_t s) { return s == p.residue().size(); });
}

} // namespace

ApproxLang meet(const ApproxLang& l1, const ApproxLang& l2) {
    if (l1.is_empty() || l2.is_empty()) { return ApproxLang::empty(); }
    if (l1.is_universal()) { return l2; }
    if (l2.is_universal()) { return l1; }
    if (l1.is_singleton()) { return contains(l2, l1.word()) ? l1 : ApproxLang::empty(); }
    if (l2.is_singleton()) { return contains(l1, l2.word()) ? l2 : ApproxLang::empty(); }
    if (l1 == l2) { return l1; }
    // Two distinct periodic languages share at most one word. Walk the (deterministic)
    // product automaton until it dies or repeats.
    const std::string& u1 = l1.word();
    const std::string& u2 = l2.word();
    std::size_t p1 = 0, p2 = 0;
    std::string w;
    for (std::size_t steps = 0; steps <= u1.size() * u2.size() + 1; ++steps) {
        if (p1 == l1.residue().size() && p2 == l2.residue().size()) { return ApproxLang::singleton(w); }
        if (u1[p1] != u2[p2]) { break; }
        w.push_back(u1[p1]);
        p1 = (p1 + 1) % u1.size();
        p2 = (p2 + 1) % u2.size();
    }
    return ApproxLang::empty();
}

ApproxLang closure_concat(const ApproxLang& l1, const ApproxLang& l2, std::size_t alpha) {
    if (l1.is_empty() || l2.is_empty()) { return ApproxLang::empty(); }
    if (l1.is_universal() || l2.is_universal()) { return ApproxLang::universal(); }
    if (l1.is_singleton() && l2.is_singleton()) { return closure_word(l1.word() + l2.word(), alpha); }

    // The product is infinite, so its closure is the unique periodic superset, if any. Any
    // periodic superset must agree with the closure of one long member (Fine and Wilf), so
    // that member proposes the only candidate.
    std::vector<Block> blocks;
    append_blocks(blocks, l1);
    append_blocks(blocks, l2);
    std::size_t shortest_star = SIZE_MAX;
    for (const Block& b : blocks) {
        if (b.star) { shortest_star = std::min(shortest_star, b.word.size()); }
    }
    const std::size_t reps = (2 * alpha + 2) / shortest_star + 1;
    std::string sample;
    for (const Block& b : blocks) {
        for (std::size_t r = 0; r < (b.star ? reps : 1); ++r) { sample += b.word; }
    }
    const ApproxLang candidate = closure_word(sample, alpha);
    if (candidate.is_periodic() && pattern_within(blocks, candidate)) { return candidate; }
    return ApproxLang::universal();
}

ApproxLang closure_subst(const std::vector<ApproxLang>& regs, const std::vector<ApproxLang>& gaps, const SymWord& w,
                         std::size_t alpha) {
    ApproxLang acc = ApproxLang::singleton("");
    for (const Sym& s : w) {
        switch (s.kind) {
        case Sym::Kind::Letter: acc = closure_concat(acc, ApproxLang::singleton(std::string(1, s.as_letter())), alpha); break;
        case Sym::Kind::Reg: acc = closure_concat(acc, regs.at(s.index()), alpha); break;
        case Sym::Kind::Gap: acc = closure_concat(acc, gaps.at(s.index()), alpha); break;
        case Sym::Kind::Unknown: fail(ErrorKind::InvalidArgument, "closure_subst: unknowns have no approximant");
        }
    }
    return acc;
}

std::vector<std::string> members_upto(const ApproxLang& l, std::size_t max_len, const std::string& alphabet) {
    std::vector<std::string> out;
    switch (l.kind()) {
    case ApproxLang::Kind::Empty: break;
    case ApproxLang::Kind::Singleton:
        if (l.word().size() <= max_len) { out.push_back(l.word()); }
        break;
    case ApproxLang::Kind::Periodic:
        for (std::string powers; powers.size() + l.residue().size() <= max_len; powers += l.word()) {
            out.push_back(powers + l.residue());
        }
        break;
    case ApproxLang::Kind::Universal: {
        std::vector<std::string> layer{""};
        for (std::size_t len = 0; len <= max_len; ++len) {
            out.insert(out.end(), layer.begin(), layer.end());
            std::vector<std::string> next;
            for (const auto& w : layer) {
                for (char c : alphabet) { next.push_back(w + c); }
            }
            layer = std::move(next);
        }
        break;
    }
    }
    return out;
}

} // namespace sstlab
