#pragma once

#include "novikov_spectra/exact.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectra {

/// Element of Gamma = Z^k in the coordinates of its GammaGroup.
struct GammaElement {
    std::vector<long> coords;

    GammaElement() = default;
    explicit GammaElement(std::vector<long> c) : coords(std::move(c)) {}
    static GammaElement zero(int rank) { return GammaElement(std::vector<long>(rank, 0)); }

    bool is_zero() const;
    int rank() const { return static_cast<int>(coords.size()); }

    friend bool operator==(const GammaElement&, const GammaElement&) = default;
    friend auto operator<=>(const GammaElement&, const GammaElement&) = default;
    friend GammaElement operator+(const GammaElement& a, const GammaElement& b);
    friend GammaElement operator-(const GammaElement& a, const GammaElement& b);
    friend GammaElement operator-(const GammaElement& a);
    GammaElement scaled(long m) const;

    std::string to_string() const;
};

/// Free abelian group with rational periods and integer Chern numbers on its
/// generators. Construction rejects any presentation in which a nonzero
/// element has both values zero.
class GammaGroup {
public:
    GammaGroup(std::vector<Rational> omega, std::vector<long> c1, bool approximate = false);
    static std::shared_ptr<const GammaGroup> trivial();

    int rank() const { return static_cast<int>(omega_.size()); }
    const std::vector<Rational>& omega_values() const { return omega_; }
    const std::vector<long>& c1_values() const { return c1_; }
    bool approximate() const { return approximate_; }

    Rational omega(const GammaElement& a) const;
    long c1(const GammaElement& a) const;
    std::pair<Rational, long> eval(const GammaElement& a) const;

    GammaElement zero() const { return GammaElement::zero(rank()); }
    GammaElement basis(int i) const;

    /// Positive generator g of the period group omega(Gamma) = gZ; 0 if trivial.
    const Rational& period() const { return period_; }

    /// Generator t of ker c1 with omega(t) > 0, if that kernel is nonzero.
    const std::optional<GammaElement>& chern_kernel_generator() const { return kernel_gen_; }

    /// The unique A with omega(A) = w and c1(A) = m, if any.
    std::optional<GammaElement> solve(const Rational& w, long m) const;
    /// Some A with c1(A) = m.
    std::optional<GammaElement> solve_c1(long m) const;
    /// Some A with omega(A) = w.
    std::optional<GammaElement> solve_omega(const Rational& w) const;

    /// Stable text identifying the presentation; used to cross-check fixtures.
    std::string fingerprint() const;

    friend bool operator==(const GammaGroup& a, const GammaGroup& b)
    {
        return a.omega_ == b.omega_ && a.c1_ == b.c1_ && a.approximate_ == b.approximate_;
    }

    void check(const GammaElement& a) const;

private:
    std::vector<Rational> omega_;
    std::vector<long> c1_;
    bool approximate_;
    Rational period_;
    std::optional<GammaElement> kernel_gen_;
};

using GammaRef = std::shared_ptr<const GammaGroup>;

std::pair<Rational, long> gamma_eval(const GammaGroup& g, const GammaElement& a);

enum class Direction { Upward, Downward };

const char* to_string(Direction d);

struct NovikovTerm {
    Rational coef;
    GammaElement exponent;
};

/// Finite window of a Novikov series. For downward scalars a term c q^B has
/// weight omega(B); for upward scalars a term c q^{-A} (stored exponent A)
/// has weight omega(A). Terms of weight at or below `floor` are unknown.
class NovikovScalar {
public:
    NovikovScalar(GammaRef gamma, Direction dir);
    NovikovScalar(GammaRef gamma, Direction dir, std::vector<NovikovTerm> terms,
                  ExtReal floor = ExtReal::neg_inf());

    static NovikovScalar monomial(GammaRef gamma, Direction dir, const Rational& c, const GammaElement& a);
    static NovikovScalar one(GammaRef gamma, Direction dir);

    Direction direction() const { return dir_; }
    const std::vector<NovikovTerm>& terms() const { return terms_; }
    const ExtReal& floor() const { return floor_; }
    const GammaRef& gamma() const { return gamma_; }
    bool is_zero() const { return terms_.empty(); }
    bool exact() const { return floor_.is_neg_inf(); }

    Rational weight(const GammaElement& a) const { return gamma_->omega(a); }
    /// Largest weight of a known term, -inf for the zero scalar.
    ExtReal top_weight() const;

    /// Downward: max omega(B); upward: min omega(-A).
    ExtReal valuation() const;

    Rational coefficient(const GammaElement& a) const;

    NovikovScalar operator-() const;
    NovikovScalar scaled(const Rational& c) const;
    /// Multiplies by the monomial whose stored exponent is `a`.
    NovikovScalar shifted(const GammaElement& a) const;

    friend NovikovScalar operator+(const NovikovScalar& x, const NovikovScalar& y);
    friend NovikovScalar operator-(const NovikovScalar& x, const NovikovScalar& y) { return x + (-y); }
    friend NovikovScalar operator*(const NovikovScalar& x, const NovikovScalar& y);
    friend bool operator==(const NovikovScalar& x, const NovikovScalar& y);

    std::string to_string() const;

private:
    void require_compatible(const NovikovScalar& other) const;

    GammaRef gamma_;
    Direction dir_;
    std::vector<NovikovTerm> terms_;  // sorted by exponent, distinct, nonzero
    ExtReal floor_;
};

enum class ArithOp { Add, Mul, Negate };

NovikovScalar nov_arith(const NovikovScalar& x, const NovikovScalar& y, ArithOp op);
ExtReal valuation(const NovikovScalar& x);

}  // namespace spectra
