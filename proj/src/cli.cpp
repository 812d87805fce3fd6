#include "flagstrata/cli.hpp"

#include "flagstrata/census.hpp"
#include "flagstrata/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>

namespace flagstrata::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string field_spec;
    std::string matrix;
    std::int64_t q = 0;
    bool tsv = false;
    std::optional<std::int64_t> cap;
    std::optional<std::uint64_t> seed;

    std::int64_t enum_cap() const {
        if (cap) return *cap;
        if (const char* env = std::getenv("FLAGSTRATA_CAP")) {
            char* end = nullptr;
            const long long v = std::strtoll(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return kDefaultEnumCap;
    }
    std::int64_t orbit_cap() const {
        if (cap) return *cap;
        if (const char* env = std::getenv("FLAGSTRATA_CAP")) {
            char* end = nullptr;
            const long long v = std::strtoll(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return kDefaultOrbitCap;
    }
};

Flag parse_flag_arg(const Options& opt) {
    const FieldCtx F = FieldCtx::make(opt.field_spec);
    return Flag::from_matrix(Mat3::parse(F, opt.matrix));
}

void emit(std::ostream& out, ordered_json j, const Options& opt) {
    if (opt.seed) j["seed"] = *opt.seed;
    out << j.dump() << "\n";
}

int do_classify(const Options& opt, std::ostream& out) {
    const Flag f = parse_flag_arg(opt);
    const CInvariants c = c_invariants(f);
    ordered_json j;
    j["stratum"] = to_string(classify_flag(f));
    j["c"] = {c.c1.str(), c.c2.str(), c.c3.str()};
    emit(out, std::move(j), opt);
    return 0;
}

int do_witness(const Options& opt, std::ostream& out) {
    const Flag f = parse_flag_arg(opt);
    const WitnessResult w = witness_for(f);
    ordered_json j;
    j["k"] = w.k.entry_literals();
    j["field"] = w.field.descriptor();
    j["degree"] = w.extension_degree;
    j["verified"] = w.verified;
    emit(out, std::move(j), opt);
    return 0;
}

int do_census(const Options& opt, std::ostream& out, bool with_orbits) {
    const CensusReport r = with_orbits ? orbit_census(opt.q, opt.orbit_cap())
                                       : stratum_census(opt.q, opt.enum_cap());
    if (opt.tsv) {
        out << census_tsv(r);
    } else {
        ordered_json j = ordered_json::parse(census_json(r));
        emit(out, std::move(j), opt);
    }
    return 0;
}

int do_p2_census(const Options& opt, std::ostream& out) {
    const auto [oprime, cprime] = p2_census(opt.q, opt.enum_cap());
    if (opt.tsv) {
        out << "q\tp2_O'\tp2_C'\n" << opt.q << '\t' << oprime << '\t' << cprime << '\n';
        return 0;
    }
    ordered_json j;
    j["q"] = opt.q;
    j["O'"] = oprime;
    j["C'"] = cprime;
    emit(out, std::move(j), opt);
    return 0;
}

int do_verify(const Options& opt, std::ostream& out) {
    const PartitionDiagnostics diag = verify_partition(opt.q, opt.enum_cap());
    ordered_json j;
    j["partition"] = diag.ok;
    if (!diag.ok) j["failures"] = diag.failures;
    emit(out, std::move(j), opt);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact classification of full flags of F^3 into SO(3)-strata"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--seed", opt.seed, "Echoed in JSON output; reserved for sampled checks");
    app.add_option("--cap", opt.cap, "Override the enumeration caps (also: FLAGSTRATA_CAP)");

    const auto add_flag_args = [&opt](CLI::App* cmd) {
        cmd->add_option("--field", opt.field_spec, "Field descriptor (Q, Qi, Fp:<p>, Fq:<p>^<e>)")
            ->required();
        cmd->add_option("--matrix", opt.matrix, "Matrix literal, rows ';'-separated")->required();
    };
    const auto add_q = [&opt](CLI::App* cmd, bool tsv_allowed) {
        cmd->add_option("--q", opt.q, "Odd prime power")->required();
        if (tsv_allowed) cmd->add_flag("--tsv", opt.tsv, "Tab-separated output");
    };

    CLI::App* classify = app.add_subcommand("classify", "Stratum and c-invariants of a flag");
    add_flag_args(classify);
    CLI::App* witness = app.add_subcommand("witness", "SO(3)-witness conjugating the reference flag");
    add_flag_args(witness);
    CLI::App* census = app.add_subcommand("census", "Stratum sizes and cross-model counts over F_q");
    add_q(census, true);
    CLI::App* orbits = app.add_subcommand("orbits", "Census plus SO(3,F_q)-orbit refinement");
    add_q(orbits, true);
    CLI::App* p2 = app.add_subcommand("p2-census", "P^2(F_q) split into O' and C'");
    add_q(p2, true);
    CLI::App* verify = app.add_subcommand("verify", "Partition and base-change verification");
    add_q(verify, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) return do_classify(opt, out);
        if (witness->parsed()) return do_witness(opt, out);
        if (census->parsed()) return do_census(opt, out, false);
        if (orbits->parsed()) return do_census(opt, out, true);
        if (p2->parsed()) return do_p2_census(opt, out);
        if (verify->parsed()) return do_verify(opt, out);
        err << "no subcommand given\n";
        return 2;
    } catch (const ParseError& e) {
        ordered_json j;
        j["error"] = {{"kind", "usage"}, {"message", e.what()}};
        out << j.dump() << "\n";
        return 2;
    } catch (const ExtensionBudgetError& e) {
        ordered_json j;
        j["error"] = {{"kind", "domain"}, {"message", e.what()}, {"radicands", e.radicand_chain}};
        out << j.dump() << "\n";
        return 1;
    } catch (const Error& e) {
        ordered_json j;
        j["error"] = {{"kind", "domain"}, {"message", e.what()}};
        out << j.dump() << "\n";
        return 1;
    }
}

}  // namespace flagstrata::cli
