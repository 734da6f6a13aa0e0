#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class of every error raised by the library. `code()` is a stable,
/// machine-readable tag used in reports and by the CLI exit-code contract.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Dimension mismatches, malformed objects, broken bookkeeping.
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& what) : Error("structural", what) {}
};

/// A quantity is not determined by the data above the precision floor.
class IndeterminateError : public Error {
public:
    explicit IndeterminateError(const std::string& what) : Error("indeterminate", what) {}
};

/// Operation applied outside its domain (zero class, non-cycle, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Parse and schema problems in fixture files.
class InputError : public Error {
public:
    InputError(std::string code, const std::string& what) : Error(std::move(code), what) {}
};

/// n / d in lowest terms; mpq_class(n, d) alone is not canonical.
Rational ratio(long n, long d);

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Real number extended by -inf and +inf. Finite values are exact.
class ExtReal {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtReal() : kind_(Kind::Finite) {}
    ExtReal(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT: implicit by design of the arithmetic
    ExtReal(long v) : kind_(Kind::Finite), value_(v) {}              // NOLINT

    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    /// Finite value; throws DomainError on an infinity.
    const Rational& value() const;

    friend bool operator==(const ExtReal& a, const ExtReal& b);
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

    /// Sum with the convention (-inf) + (+inf) rejected.
    friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
    friend ExtReal operator-(const ExtReal& a);
    friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

    std::string to_string() const;
    static ExtReal parse(std::string_view text);

private:
    explicit ExtReal(Kind k) : kind_(k) {}
    Kind kind_;
    Rational value_;
};

ExtReal max(const ExtReal& a, const ExtReal& b);
ExtReal min(const ExtReal& a, const ExtReal& b);

}  // namespace spectra
