#include "flagstrata/census.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace flagstrata {

namespace {

const Stratum kStrata[4] = {Stratum::O, Stratum::LC1, Stratum::LC2, Stratum::C};

std::uint64_t count_sphere(const FieldCtx& F, std::int64_t rhs) {
    const std::uint64_t q = F.order();
    const FieldElement target = F.integer(rhs);
    std::uint64_t n = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
        const FieldElement x = F.element_at(a);
        const FieldElement xx = x * x;
        for (std::uint64_t b = 0; b < q; ++b) {
            const FieldElement y = F.element_at(b);
            const FieldElement s = xx + y * y;
            for (std::uint64_t c = 0; c < q; ++c) {
                const FieldElement z = F.element_at(c);
                if (s + z * z == target) ++n;
            }
        }
    }
    return n;
}

CensusReport base_report(std::int64_t q, std::int64_t cap) {
    const FieldCtx F = checked_field(q, cap);
    CensusReport r;
    r.q = q;
    for (Stratum s : kStrata) r.stratum_sizes[s] = 0;
    for_each_flag(F, [&](const Flag& f) {
        ++r.total_flags;
        ++r.stratum_sizes[classify_flag(f)];
    });
    r.sphere_minus1_count = count_sphere(F, -1);
    for (const ProjPoint& p : enumerate_lines(q, cap)) {
        if (classify_line(p) == LineStratum::Cprime) {
            ++r.conic_count;
            ++r.p2_cprime;
        } else {
            ++r.p2_oprime;
        }
    }
    return r;
}

}  // namespace

std::vector<std::string> validate_report(const CensusReport& r) {
    std::vector<std::string> bad;
    const std::uint64_t q = static_cast<std::uint64_t>(r.q);
    std::uint64_t sum = 0;
    for (const auto& [s, n] : r.stratum_sizes) sum += n;
    if (sum != r.total_flags || r.total_flags != q * q * q + 2 * q * q + 2 * q + 1)
        bad.push_back("partition: sum of strata != q^3+2q^2+2q+1");
    if (r.stratum_sizes.at(Stratum::C) != r.conic_count)
        bad.push_back("cross-model: |C| != #conic");
    if (r.stratum_sizes.at(Stratum::LC1) != r.sphere_minus1_count ||
        r.stratum_sizes.at(Stratum::LC2) != r.sphere_minus1_count)
        bad.push_back("cross-model: |LC1| or |LC2| != #{x^2+y^2+z^2=-1}");
    if (r.p2_cprime != r.conic_count || r.p2_oprime + r.p2_cprime != q * q + q + 1)
        bad.push_back("p2: O' + C' partition of P^2 broken");
    if (!r.orbit_sizes.empty()) {
        for (Stratum s : kStrata) {
            std::uint64_t osum = 0;
            for (std::uint64_t n : r.orbit_sizes.at(s)) {
                osum += n;
                if (r.so3_order % n != 0) bad.push_back("orbit size does not divide |SO(3)|");
            }
            if (osum != r.stratum_sizes.at(s))
                bad.push_back(std::string("orbits of ") + to_string(s) +
                              " do not sum to the stratum size");
        }
    }
    return bad;
}

CensusReport stratum_census(std::int64_t q, std::int64_t cap) {
    CensusReport r = base_report(q, cap);
    r.violations = validate_report(r);
    return r;
}

CensusReport orbit_census(std::int64_t q, std::int64_t cap) {
    CensusReport r = base_report(q, cap);
    const std::vector<Mat3> group = enumerate_SO3(q, cap);
    r.so3_order = group.size();
    for (Stratum s : kStrata) r.orbit_sizes[s] = {};

    const std::vector<Flag> flags = enumerate_flags(q, cap);
    std::map<std::vector<std::int64_t>, std::size_t> index;
    for (std::size_t i = 0; i < flags.size(); ++i) index[flags[i].key()] = i;
    std::vector<bool> seen(flags.size(), false);
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (seen[i]) continue;
        const Stratum s = classify_flag(flags[i]);
        std::uint64_t size = 0;
        for (const Mat3& k : group) {
            const Flag kf = act(k, flags[i]);
            const std::size_t j = index.at(kf.key());
            if (!seen[j]) {
                seen[j] = true;
                ++size;
                if (classify_flag(kf) != s)
                    r.violations.push_back("orbit crosses strata at q=" + std::to_string(q));
            }
        }
        r.orbit_sizes[s].push_back(size);
    }
    for (Stratum s : kStrata) std::sort(r.orbit_sizes[s].begin(), r.orbit_sizes[s].end());
    auto more = validate_report(r);
    r.violations.insert(r.violations.end(), more.begin(), more.end());
    return r;
}

std::pair<std::uint64_t, std::uint64_t> p2_census(std::int64_t q, std::int64_t cap) {
    std::uint64_t oprime = 0, cprime = 0;
    for (const ProjPoint& p : enumerate_lines(q, cap)) {
        if (classify_line(p) == LineStratum::Cprime)
            ++cprime;
        else
            ++oprime;
    }
    return {oprime, cprime};
}

PartitionDiagnostics verify_partition(std::int64_t q, std::int64_t cap) {
    PartitionDiagnostics diag;
    const FieldCtx F = checked_field(q, cap);
    const FieldCtx F2 = FieldCtx::of_order(F.order() * F.order());

    // Membership in U, Z1, Z2 via the moduli conditions; membership in the
    // closed stratum via theta-stability, which is computed independently of
    // c3. Over a field exactly one must hold.
    const auto check_exactly_one = [&diag](const Flag& f, const std::string& where) {
        const CInvariants c = c_invariants(f);
        const bool z1 = c.c1.is_zero(), z2 = c.c2.is_zero(), z3 = c.c3.is_zero();
        const int hits =
            int(!z1 && !z2) + int(!z1 && z2) + int(z1 && !z3) + int(theta_stable(f));
        if (hits != 1)
            diag.failures.push_back(where + ": flag " + f.canonical().str() + " lies in " +
                                    std::to_string(hits) + " strata");
    };

    for_each_flag(F, [&](const Flag& f) {
        check_exactly_one(f, "F_" + std::to_string(q));
        const Flag lifted = base_change(f, F2);
        if (classify_flag(lifted) != classify_flag(f))
            diag.failures.push_back("base change changes the stratum of " + f.canonical().str());
    });
    for_each_flag(F2, [&](const Flag& f) {
        check_exactly_one(f, "F_" + std::to_string(F2.order()));
    });
    diag.ok = diag.failures.empty();
    return diag;
}

std::vector<Mat3> stabilizer(const Flag& f, std::int64_t q, std::int64_t cap) {
    std::vector<Mat3> out;
    for (const Mat3& k : enumerate_SO3(q, cap)) {
        if (act(k, f) == f) out.push_back(k);
    }
    return out;
}

std::string census_json(const CensusReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "flagstrata.census/1";
    j["q"] = r.q;
    j["total"] = r.total_flags;
    for (const auto& [s, n] : r.stratum_sizes) j[to_string(s)] = n;
    j["sphere_minus1"] = r.sphere_minus1_count;
    j["conic"] = r.conic_count;
    if (r.so3_order != 0) {
        j["so3_order"] = r.so3_order;
        nlohmann::ordered_json orbits;
        for (const auto& [s, sizes] : r.orbit_sizes) orbits[to_string(s)] = sizes;
        j["orbits"] = orbits;
    }
    j["p2"] = {{"O'", r.p2_oprime}, {"C'", r.p2_cprime}};
    j["violations"] = r.violations;
    return j.dump();
}

std::string census_tsv(const CensusReport& r) {
    std::ostringstream out;
    out << "q\ttotal\tO\tLC1\tLC2\tC\tsphere_minus1\tconic\tso3_order\t"
           "orbits_O\torbits_LC1\torbits_LC2\torbits_C\tp2_O'\tp2_C'\n";
    out << r.q << '\t' << r.total_flags;
    for (Stratum s : kStrata) out << '\t' << r.stratum_sizes.at(s);
    out << '\t' << r.sphere_minus1_count << '\t' << r.conic_count << '\t';
    if (r.so3_order)
        out << r.so3_order;
    else
        out << '-';
    for (Stratum s : kStrata) {
        out << '\t';
        if (r.orbit_sizes.count(s) && !r.orbit_sizes.at(s).empty()) {
            const auto& sizes = r.orbit_sizes.at(s);
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                if (i) out << ',';
                out << sizes[i];
            }
        } else {
            out << '-';
        }
    }
    out << '\t' << r.p2_oprime << '\t' << r.p2_cprime << '\n';
    return out.str();
}

}  // namespace flagstrata
