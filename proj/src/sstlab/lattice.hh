// The lattice L_α of approximant languages and the closure operator.

#ifndef SSTLAB_LATTICE_HH
#define SSTLAB_LATTICE_HH

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "sstlab/symbol.hh"

namespace sstlab {

/// ∅, a singleton {u}, a periodic language u*v (u primitive, v a strict prefix of u), or
/// the universal language. Universal is never identified with a periodic language, so the
/// lattice behaves as over an alphabet of at least two letters.
class ApproxLang {
public:
    enum class Kind { Empty, Singleton, Periodic, Universal };

    static ApproxLang empty() { return ApproxLang(Kind::Empty, {}, {}); }
    static ApproxLang singleton(std::string u) { return ApproxLang(Kind::Singleton, std::move(u), {}); }
    /// Throws Error(InvalidArgument) unless u is primitive and v a strict prefix of u.
    static ApproxLang periodic(std::string u, std::string v);
    static ApproxLang universal() { return ApproxLang(Kind::Universal, {}, {}); }

    Kind kind() const { return kind_; }
    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_singleton() const { return kind_ == Kind::Singleton; }
    bool is_periodic() const { return kind_ == Kind::Periodic; }
    bool is_universal() const { return kind_ == Kind::Universal; }

    /// The singleton word, or the period word u of u*v.
    const std::string& word() const { return word_; }
    /// The residue v of u*v.
    const std::string& residue() const { return residue_; }

    /// Member of L_α: singletons of length ≤ α, periods of length ≤ α.
    bool fits(std::size_t alpha) const;

    /// EMPTY, ANY, "aba", (ab)*a.
    std::string to_string() const;
    /// Inverse of to_string; throws Error(Parse).
    static ApproxLang parse(const std::string& text);

    auto operator<=>(const ApproxLang&) const = default;

private:
    ApproxLang(Kind kind, std::string word, std::string residue)
        : kind_(kind), word_(std::move(word)), residue_(std::move(residue)) {}

    Kind kind_;
    std::string word_;
    std::string residue_;
};

/// Least p such that w is a prefix of (w[1,p])^ω. Throws on the empty word.
std::size_t period(const std::string& w);
bool is_primitive(const std::string& w);
/// Shortest z with w = z^k.
std::string primitive_root(const std::string& w);

/// ⌈{w}⌉: the intersection of the L_α members containing w. This is {w} itself when w is
/// longer than α but has two periods ≤ α that are not multiples of one another.
ApproxLang closure_word(const std::string& w, std::size_t alpha);

bool contains(const ApproxLang& l, const std::string& w);
bool subset(const ApproxLang& l1, const ApproxLang& l2);
/// Exact intersection. The result may be a singleton longer than α.
ApproxLang meet(const ApproxLang& l1, const ApproxLang& l2);

/// ⌈L1·L2⌉.
ApproxLang closure_concat(const ApproxLang& l1, const ApproxLang& l2, std::size_t alpha);

/// ⌈A(w)⌉ by a left-to-right fold; registers index `regs`, gaps index `gaps`, letters are singletons.
ApproxLang closure_subst(const std::vector<ApproxLang>& regs, const std::vector<ApproxLang>& gaps, const SymWord& w,
                         std::size_t alpha);

/// Words of `l` up to length `max_len`, shortlex; `alphabet` is used for the universal language.
std::vector<std::string> members_upto(const ApproxLang& l, std::size_t max_len, const std::string& alphabet);

} // namespace sstlab

#endif
