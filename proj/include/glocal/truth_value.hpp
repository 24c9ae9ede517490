#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>

namespace glocal {

/// Paraconsistent weak Kleene value. `Undef` is contagious through negation and conjunction.
enum class TruthValue : std::uint8_t { False = 0, True = 1, Undef = 2 };

constexpr bool is_defined(TruthValue v) noexcept { return v != TruthValue::Undef; }
constexpr bool is_true(TruthValue v) noexcept { return v == TruthValue::True; }

constexpr TruthValue operator!(TruthValue v) noexcept {
    switch (v) {
    case TruthValue::True: return TruthValue::False;
    case TruthValue::False: return TruthValue::True;
    default: return TruthValue::Undef;
    }
}

constexpr TruthValue operator&&(TruthValue l, TruthValue r) noexcept {
    if (l == TruthValue::Undef || r == TruthValue::Undef) return TruthValue::Undef;
    return (l == TruthValue::True && r == TruthValue::True) ? TruthValue::True : TruthValue::False;
}

constexpr std::string_view to_string(TruthValue v) noexcept {
    switch (v) {
    case TruthValue::True: return "True";
    case TruthValue::False: return "False";
    default: return "Undef";
    }
}

inline std::ostream& operator<<(std::ostream& os, TruthValue v) { return os << to_string(v); }

} // namespace glocal
