#pragma once

#include "flagstrata/strata.hpp"

#include <map>
#include <utility>

namespace flagstrata {

/// Per-field stratum cardinalities, cross-model point counts, and (when
/// computed) the SO(3,F_q)-orbit refinement.
struct CensusReport {
    std::int64_t q = 0;
    std::uint64_t total_flags = 0;
    std::map<Stratum, std::uint64_t> stratum_sizes;
    std::uint64_t sphere_minus1_count = 0;  // solutions of x^2+y^2+z^2 = -1
    std::uint64_t conic_count = 0;          // points of x^2+y^2+z^2 = 0 in P^2
    std::uint64_t so3_order = 0;            // 0 when orbits were not computed
    std::map<Stratum, std::vector<std::uint64_t>> orbit_sizes;  // sorted ascending
    std::uint64_t p2_oprime = 0, p2_cprime = 0;
    std::vector<std::string> violations;  // names of failed report invariants
};

/// Classifies every flag of F_q^3 and fills counts and cross-model counts;
/// orbit fields stay empty. Violated report invariants are listed in
/// `violations` rather than thrown.
CensusReport stratum_census(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// stratum_census plus the SO(3,F_q)-orbit refinement of each stratum.
CensusReport orbit_census(std::int64_t q, std::int64_t cap = kDefaultOrbitCap);

/// Counts of P^2(F_q) points with Property (O)' / (C)'.
std::pair<std::uint64_t, std::uint64_t> p2_census(std::int64_t q,
                                                  std::int64_t cap = kDefaultEnumCap);

struct PartitionDiagnostics {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks that every flag receives exactly one stratum over F_q and over
/// F_{q^2}, and that strata are stable under base change F_q -> F_{q^2}.
PartitionDiagnostics verify_partition(std::int64_t q, std::int64_t cap = kDefaultEnumCap);

/// All k in SO(3,F_q) fixing the flag.
std::vector<Mat3> stabilizer(const Flag& f, std::int64_t q,
                             std::int64_t cap = kDefaultOrbitCap);

/// Fills `violations` from the report invariants; returns the list.
std::vector<std::string> validate_report(const CensusReport& r);

std::string census_json(const CensusReport& r);
std::string census_tsv(const CensusReport& r);

}  // namespace flagstrata
