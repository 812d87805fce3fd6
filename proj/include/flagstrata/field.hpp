#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagstrata {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed literal, descriptor, or matrix string.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Violated mathematical precondition (characteristic 2, singular matrix,
/// wrong stratum, q even, cap exceeded, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Raised when a square root would push a field tower past the supported
/// height. Carries the chain of radicands that led here so the caller can
/// report exactly which extension was refused.
class ExtensionBudgetError : public DomainError {
public:
    ExtensionBudgetError(const std::string& what, std::vector<std::string> chain)
        : DomainError(what), radicand_chain(std::move(chain)) {}
    std::vector<std::string> radicand_chain;
};

enum class FieldKind {
    Rational,          // Q
    GaussianRational,  // Q(i)
    Prime,             // F_p
    PrimePower,        // F_{p^e}, e in {2,4}
    Tower,             // quadratic tower over Q or Q(i)
};

namespace detail {
struct FieldData;
}

class FieldElement;

/// Immutable description of a supported exact field. Cheap to copy (shared
/// handle); two contexts compare equal iff they describe the same field with
/// the same encoding.
class FieldCtx {
public:
    FieldCtx() = default;  // empty handle; using it throws

    static FieldCtx rationals();
    static FieldCtx gaussian_rationals();
    static FieldCtx prime(std::int64_t p);
    static FieldCtx prime_power(std::int64_t p, int e);
    /// Parses a field descriptor: Q, Qi, Fp:<p>, Fq:<p>^<e>, optionally
    /// followed by tower segments [rt:<element literal>].
    static FieldCtx make(const std::string& descriptor);
    /// Context for F_q given a prime power q (e in {1,2,4}).
    static FieldCtx of_order(std::uint64_t q);

    bool valid() const { return d_ != nullptr; }
    FieldKind kind() const;
    std::int64_t characteristic() const;
    /// Extension degree over the prime field (finite) or over Q (char 0).
    int degree() const;
    /// Number of elements; 0 for infinite fields.
    std::uint64_t order() const;
    bool finite() const { return characteristic() != 0; }
    std::string descriptor() const;

    bool operator==(const FieldCtx& o) const;
    bool operator!=(const FieldCtx& o) const { return !(*this == o); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement integer(std::int64_t n) const;
    FieldElement rational(const Rational& r) const;
    /// Element from raw coordinates (finite fields; residues are reduced).
    FieldElement from_coords(const std::vector<std::int64_t>& coords) const;
    /// Element from coordinates over Q (char-0 fields; length = degree()).
    FieldElement from_coords(const std::vector<Rational>& coords) const;
    /// Parses an element literal; parse(x.str()) == x.
    FieldElement parse(const std::string& literal) const;

    /// idx-th element in lexicographic coordinate order (finite fields only).
    FieldElement element_at(std::uint64_t idx) const;

    /// Modulus coefficients, low to high (finite, degree > 1).
    const std::vector<std::int64_t>& modulus() const;

    const detail::FieldData& data() const;

private:
    explicit FieldCtx(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
    friend struct detail::FieldData;
};

/// An exact field element. Immutable value type; all arithmetic is exact.
class FieldElement {
public:
    FieldElement() = default;  // invalid; using it throws

    const FieldCtx& ctx() const { return ctx_; }
    bool valid() const { return ctx_.valid(); }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t n) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Total order used for deterministic tie-breaking (root choice, scan
    /// order). Finite coordinates compare as residues in [0,p); rational
    /// coordinates order all nonnegatives (ascending) before all negatives
    /// (ascending magnitude). Returns <0, 0, >0.
    int cmp(const FieldElement& o) const;

    std::string str() const;

    const std::vector<std::int64_t>& finite_coords() const { return fin_; }
    const std::vector<Rational>& rational_coords() const { return rat_; }

private:
    FieldCtx ctx_;
    std::vector<std::int64_t> fin_;  // finite: residue coordinates, length degree()
    std::vector<Rational> rat_;      // char 0: coordinates over Q, length degree()
    friend struct detail::FieldData;
};

struct SqrtOutcome {
    FieldElement root;  // root*root == a in `field`
    FieldCtx field;     // == a.ctx() when extended is false
    bool extended = false;
};

/// Square root of a, extending the field by one quadratic step when a is not
/// a square. The returned root is the lexicographically smaller of the two
/// (FieldElement::cmp order). Throws ExtensionBudgetError when the extension
/// would exceed the supported tower height / finite degree set {1,2,4}.
SqrtOutcome sqrt_or_extend(const FieldElement& a);

/// True iff a is a square in its own field (no extension attempted).
bool is_square(const FieldElement& a);

/// Canonical embedding into a larger supported field. `target` must lie above
/// a.ctx() on one of the supported ladders: F_{p^e} -> F_{p^e'} with e | e',
/// or a char-0 tower extending a.ctx()'s levels. Deterministic: the finite
/// generator image is the lexicographically first root of the source modulus.
FieldElement lift(const FieldElement& a, const FieldCtx& target);

/// Degree of target over source along the supported ladders.
int relative_degree(const FieldCtx& source, const FieldCtx& target);

}  // namespace flagstrata
