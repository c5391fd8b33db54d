// Symbols of update images, gap updates, eff-words and schemas.

#ifndef SSTLAB_SYMBOL_HH
#define SSTLAB_SYMBOL_HH

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sstlab {

/// Reserved end-of-input marker.
inline constexpr char kMarker = '$';

/// A letter, register, gap or unknown. Registers and gaps are 0-based indices,
/// so register `reg(0)` is x1 and gap `gap(0)` is y0.
struct Sym {
    enum class Kind : std::uint8_t { Letter, Reg, Gap, Unknown };

    Kind kind{Kind::Letter};
    std::uint32_t value{0};

    static constexpr Sym letter(char c) { return {Kind::Letter, static_cast<unsigned char>(c)}; }
    static constexpr Sym reg(std::size_t i) { return {Kind::Reg, static_cast<std::uint32_t>(i)}; }
    static constexpr Sym gap(std::size_t i) { return {Kind::Gap, static_cast<std::uint32_t>(i)}; }
    static constexpr Sym unknown(std::size_t i) { return {Kind::Unknown, static_cast<std::uint32_t>(i)}; }

    constexpr bool is_letter() const { return kind == Kind::Letter; }
    constexpr bool is_reg() const { return kind == Kind::Reg; }
    constexpr bool is_gap() const { return kind == Kind::Gap; }
    constexpr bool is_unknown() const { return kind == Kind::Unknown; }
    constexpr char as_letter() const { return static_cast<char>(value); }
    constexpr std::size_t index() const { return value; }

    auto operator<=>(const Sym&) const = default;
};

using SymWord = std::vector<Sym>;

/// Letters-only word as a symbol word.
SymWord letters(const std::string& w);

/// Letter content of a symbol word, skipping every non-letter.
std::string letters_of(const SymWord& w);

/// Number of letters in `w`.
std::size_t letter_count(const SymWord& w);

} // namespace sstlab

#endif
