#include "sstlab/update.hh"

#include "sstlab/error.hh"

namespace sstlab {

SymWord letters(const std::string& w) {
    SymWord out;
    out.reserve(w.size());
    for (char c : w) { out.push_back(Sym::letter(c)); }
    return out;
}

std::string letters_of(const SymWord& w) {
    std::string out;
    for (const Sym& s : w) {
        if (s.is_letter()) { out.push_back(s.as_letter()); }
    }
    return out;
}

std::size_t letter_count(const SymWord& w) {
    std::size_t n = 0;
    for (const Sym& s : w) { n += s.is_letter() ? 1 : 0; }
    return n;
}

Update Update::identity(std::size_t num_registers) {
    Update u;
    u.images.resize(num_registers);
    for (std::size_t i = 0; i < num_registers; ++i) { u.images[i] = {Sym::reg(i)}; }
    return u;
}

SymWord image_of_chi(const Update& u) {
    SymWord out;
    for (const SymWord& img : u.images) { out.insert(out.end(), img.begin(), img.end()); }
    return out;
}

bool is_copyless(const Update& u) {
    std::vector<bool> seen(u.num_registers(), false);
    for (const SymWord& img : u.images) {
        for (const Sym& s : img) {
            if (!s.is_reg()) { continue; }
            if (s.index() >= seen.size() || seen[s.index()]) { return false; }
            seen[s.index()] = true;
        }
    }
    return true;
}

std::size_t letter_capacity(const Update& u) {
    std::size_t n = 0;
    for (const SymWord& img : u.images) { n += letter_count(img); }
    return n;
}

SymWord substitute(const Update& f, const SymWord& w) {
    SymWord out;
    for (const Sym& s : w) {
        if (s.is_reg()) {
            const SymWord& img = f.images.at(s.index());
            out.insert(out.end(), img.begin(), img.end());
        } else {
            out.push_back(s);
        }
    }
    return out;
}

Update compose_updates(const Update& f, const Update& g) {
    if (f.num_registers() != g.num_registers()) {
        fail(ErrorKind::InvalidArgument, "compose_updates: register sets differ");
    }
    Update out;
    out.images.reserve(g.num_registers());
    for (const SymWord& img : g.images) { out.images.push_back(substitute(f, img)); }
    return out;
}

std::string evaluate(const Valuation& nu, const SymWord& w) {
    std::string out;
    for (const Sym& s : w) {
        if (s.is_letter()) {
            out.push_back(s.as_letter());
        } else if (s.is_reg()) {
            out += nu.at(s.index());
        } else {
            fail(ErrorKind::InvalidArgument, "evaluate: word contains a non-register variable");
        }
    }
    return out;
}

Valuation apply_update(const Valuation& nu, const Update& f) {
    Valuation out;
    out.reserve(f.num_registers());
    for (const SymWord& img : f.images) { out.push_back(evaluate(nu, img)); }
    return out;
}

Flow Flow::identity(std::size_t num_registers) {
    Flow f;
    f.sources.resize(num_registers);
    for (std::size_t i = 0; i < num_registers; ++i) { f.sources[i] = {i}; }
    return f;
}

Flow flow_of(const Update& u) {
    Flow f;
    f.sources.resize(u.num_registers());
    for (std::size_t x = 0; x < u.num_registers(); ++x) {
        for (const Sym& s : u.images[x]) {
            if (s.is_reg()) { f.sources[x].push_back(s.index()); }
        }
    }
    return f;
}

Flow compose_flows(const Flow& f1, const Flow& f2) {
    if (f1.num_registers() != f2.num_registers()) {
        fail(ErrorKind::InvalidArgument, "compose_flows: register sets differ");
    }
    Flow out;
    out.sources.resize(f2.num_registers());
    for (std::size_t x = 0; x < f2.num_registers(); ++x) {
        for (std::size_t mid : f2.sources[x]) {
            const auto& src = f1.sources.at(mid);
            out.sources[x].insert(out.sources[x].end(), src.begin(), src.end());
        }
    }
    return out;
}

bool is_idempotent_flow(const Flow& f) { return compose_flows(f, f) == f; }

std::string flow_to_string(const Flow& f, const std::vector<std::string>& register_names) {
    std::string out;
    for (std::size_t x = 0; x < f.num_registers(); ++x) {
        if (x > 0) { out += ' '; }
        out += register_names.at(x) + ":[";
        for (std::size_t i = 0; i < f.sources[x].size(); ++i) {
            if (i > 0) { out += ','; }
            out += register_names.at(f.sources[x][i]);
        }
        out += ']';
    }
    return out;
}

} // namespace sstlab
