#pragma once

#include "flagstrata/mat3.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace flagstrata {

inline constexpr std::int64_t kDefaultEnumCap = 49;
inline constexpr std::int64_t kDefaultOrbitCap = 13;

/// A point of P^2(F): nonzero coordinates with the first nonzero one scaled
/// to 1. Equality is coordinate equality of the canonical form.
class ProjPoint {
public:
    static ProjPoint of(const Vec3& coords);
    const Vec3& coords() const { return v_; }
    const FieldCtx& ctx() const { return v_.ctx(); }
    bool operator==(const ProjPoint& o) const { return v_ == o.v_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    std::string str() const { return v_.str(); }

private:
    explicit ProjPoint(Vec3 v) : v_(std::move(v)) {}
    Vec3 v_;
};

/// A full flag 0 < L < V2 < F^3, held as an SL3 representative g with
/// L = span(v1(g)), V2 = span(v1(g), v2(g)), plus the unique reduced
/// column-echelon canonical representative. Two flags are equal iff their
/// canonical matrices coincide.
class Flag {
public:
    static Flag from_matrix(const Mat3& g);
    static Flag from_line_plane(const ProjPoint& line, const ProjPoint& plane_normal);

    const Mat3& rep() const { return rep_; }
    const Mat3& canonical() const { return canon_; }
    const FieldCtx& ctx() const { return rep_.ctx(); }

    Vec3 line() const { return canon_.col(0); }

    bool operator==(const Flag& o) const { return canon_ == o.canon_; }
    bool operator!=(const Flag& o) const { return !(*this == o); }

    /// Canonical coordinate key (finite fields), usable as a map key and as
    /// the lexicographic sort key for enumeration order.
    std::vector<std::int64_t> key() const;

    /// Serialization: the 9 canonical entries, row by row, in the element
    /// grammar.
    std::array<std::array<std::string, 3>, 3> canonical_literals() const {
        return canon_.entry_literals();
    }

private:
    Flag(Mat3 rep, Mat3 canon) : rep_(std::move(rep)), canon_(std::move(canon)) {}
    Mat3 rep_;
    Mat3 canon_;
};

/// Applies k (in SL3) to a flag.
Flag act(const Mat3& k, const Flag& f);

/// Base change along a supported field embedding.
Flag base_change(const Flag& f, const FieldCtx& target);
ProjPoint base_change(const ProjPoint& p, const FieldCtx& target);

/// All q^2+q+1 canonical points of P^2(F_q), lexicographically ordered.
std::vector<ProjPoint> enumerate_lines(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// All full flags of F_q^3, each exactly once, sorted lexicographically on
/// the canonical coordinates; length q^3+2q^2+2q+1.
std::vector<Flag> enumerate_flags(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// Streaming variant of enumerate_flags (generation order, not sorted).
void for_each_flag(const FieldCtx& F, const std::function<void(const Flag&)>& fn);

/// All of SO(3, F_q), each matrix exactly once.
std::vector<Mat3> enumerate_SO3(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// All of B_std(F_q) (upper triangular, det 1).
std::vector<Mat3> enumerate_Bstd(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// Field context for F_q with the cap/q validity checks shared by the
/// enumeration entry points (q odd, q <= cap).
FieldCtx checked_field(std::int64_t q, std::int64_t cap);

}  // namespace flagstrata
