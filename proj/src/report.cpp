#include "framepart/report.hpp"

#include <cmath>
#include <sstream>

#include "framepart/io.hpp"

namespace framepart {

using nlohmann::json;

namespace {

double mode_value(Mode mode, double sigma_value, double eta_value) {
    return mode == Mode::Feichtinger ? sigma_value : eta_value;
}

bool below_one(double v) { return v < 1.0; }

bool near_one(double v) { return v < 1.0 && v >= 1.0 - kBorderlineWidth; }

json block_to_json(const BlockCertificate& b, Mode mode) {
    const double key = mode_value(mode, b.sigma, b.eta);
    json out;
    out["indices"] = b.indices;
    out["sigma"] = b.sigma;
    out["eta"] = b.eta;
    out["gamma"] = b.gamma;
    out["lambda_min"] = b.riesz.lambda_min;
    out["lambda_max"] = b.riesz.lambda_max;
    out["riesz_lower"] = b.riesz.a_bound;
    out["riesz_upper"] = b.riesz.b_bound;
    out["certified"] = below_one(key);
    out["riesz_certified"] = b.riesz.certified;
    out["borderline"] = near_one(key);
    out["spectrally_riesz"] = b.riesz.spectrally_riesz;
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

json certificate_to_json(const PartitionCertificate& cert, const ReportContext& ctx) {
    json out;
    out["schema"] = kReportSchemaId;
    out["schema_version"] = kReportSchemaVersion;
    out["tool_version"] = kToolVersion;
    out["input_digest"] = ctx.input_digest;
    out["input"] = {{"n", cert.partition.n}, {"dim", ctx.dim}, {"field", to_string(ctx.field)}};
    out["mode"] = to_string(cert.mode);
    out["global_bounds"] = {{"spectral_B", cert.spectral_bound}, {"schur_B", cert.schur_bound}};
    out["bessel_constant"] = cert.global_bound;
    out["bessel_overridden"] = cert.bound_overridden;
    out["levels"] = cert.partition.levels;
    out["levels_borderline"] = cert.levels_borderline;
    out["target"] = cert.target;
    json blocks = json::array();
    for (const auto& b : cert.per_block) blocks.push_back(block_to_json(b, cert.mode));
    out["blocks"] = std::move(blocks);
    out["all_certified"] = cert.all_certified;
    json timings = json::object();
    for (const auto& [name, ms] : ctx.timings_ms) timings[name] = ms;
    out["timings"] = std::move(timings);
    return out;
}

json without_timings(json report) {
    if (report.is_object()) report.erase("timings");
    return report;
}

std::vector<std::string> report_schema_problems(const json& report) {
    std::vector<std::string> problems;
    if (!report.is_object()) return {"report must be a JSON object"};

    auto require = [&](const json& obj, const std::string& where, const char* key, auto&& check,
                       const char* expected) {
        if (!obj.contains(key)) {
            problems.push_back(where + key + " is missing");
        } else if (!check(obj[key])) {
            problems.push_back(where + key + " must be " + expected);
        }
    };
    const auto is_number = [](const json& v) { return v.is_number(); };
    const auto is_bool = [](const json& v) { return v.is_boolean(); };
    const auto is_uint = [](const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; };
    const auto is_string = [](const json& v) { return v.is_string(); };

    require(report, "", "schema", [](const json& v) { return v == kReportSchemaId; },
            "\"frame-partition/certificate-report\"");
    require(report, "", "schema_version", [](const json& v) { return v.is_number_integer() && v == kReportSchemaVersion; },
            "1");
    require(report, "", "tool_version", is_string, "a string");
    require(report, "", "input_digest",
            [](const json& v) {
                if (!v.is_string()) return false;
                const auto s = v.get<std::string>();
                if (s.size() != 7 + 64 || s.rfind("sha256:", 0) != 0) return false;
                return s.find_first_not_of("0123456789abcdef", 7) == std::string::npos;
            },
            "\"sha256:\" followed by 64 lowercase hex digits");
    require(report, "", "input", [](const json& v) { return v.is_object(); }, "an object");
    if (report.contains("input") && report["input"].is_object()) {
        const auto& in = report["input"];
        require(in, "input.", "n", is_uint, "a nonnegative integer");
        require(in, "input.", "dim", is_uint, "a nonnegative integer");
        require(in, "input.", "field", [](const json& v) { return v == "real" || v == "complex"; },
                "\"real\" or \"complex\"");
    }
    require(report, "", "mode", [](const json& v) { return v == "feichtinger" || v == "uniform"; },
            "\"feichtinger\" or \"uniform\"");
    require(report, "", "global_bounds", [](const json& v) { return v.is_object(); }, "an object");
    if (report.contains("global_bounds") && report["global_bounds"].is_object()) {
        require(report["global_bounds"], "global_bounds.", "spectral_B", is_number, "a number");
        require(report["global_bounds"], "global_bounds.", "schur_B", is_number, "a number");
    }
    require(report, "", "bessel_constant", is_number, "a number");
    require(report, "", "bessel_overridden", is_bool, "a boolean");
    require(report, "", "levels", is_uint, "a nonnegative integer");
    require(report, "", "levels_borderline", is_bool, "a boolean");
    require(report, "", "target", is_number, "a number");
    require(report, "", "all_certified", is_bool, "a boolean");
    require(report, "", "timings",
            [](const json& v) {
                if (!v.is_object()) return false;
                for (const auto& [k, t] : v.items())
                    if (!t.is_number()) return false;
                return true;
            },
            "an object of numbers");
    require(report, "", "blocks", [](const json& v) { return v.is_array(); }, "an array");
    if (report.contains("blocks") && report["blocks"].is_array()) {
        const auto& blocks = report["blocks"];
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto where = "blocks[" + std::to_string(b) + "].";
            const auto& blk = blocks[b];
            if (!blk.is_object()) {
                problems.push_back("blocks[" + std::to_string(b) + "] must be an object");
                continue;
            }
            require(blk, where, "indices",
                    [](const json& v) {
                        if (!v.is_array() || v.empty()) return false;
                        for (const auto& i : v)
                            if (!i.is_number_integer() || i.get<std::int64_t>() < 0) return false;
                        return true;
                    },
                    "a nonempty array of nonnegative integers");
            for (const char* key : {"sigma", "eta", "gamma", "lambda_min", "lambda_max", "riesz_lower", "riesz_upper"})
                require(blk, where, key, is_number, "a number");
            for (const char* key : {"certified", "riesz_certified", "borderline", "spectrally_riesz"})
                require(blk, where, key, is_bool, "a boolean");
        }
    }
    return problems;
}

CertifyOutcome certify_report(const UnitVectorSequence& seq, const json& report, const CertifyOptions& opts) {
    if (const auto problems = report_schema_problems(report); !problems.empty()) {
        std::string msg = "malformed certificate report:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw FormatError(msg);
    }

    CertifyOutcome out;
    const auto digest = input_digest(seq);
    out.digest_matches = report["input_digest"] == digest;
    if (!out.digest_matches && !opts.force)
        throw DigestMismatch("report digest " + report["input_digest"].get<std::string>() +
                             " does not match input digest " + digest);

    const Mode mode = mode_from_string(report["mode"].get<std::string>());
    Partition partition;
    partition.n = seq.size();
    partition.levels = report["levels"].get<int>();
    for (const auto& blk : report["blocks"]) partition.blocks.push_back(blk["indices"].get<IndexSet>());
    if (report["input"]["n"].get<std::size_t>() != seq.size())
        throw IndexMismatch("report describes " + std::to_string(report["input"]["n"].get<std::size_t>()) +
                            " vectors, input has " + std::to_string(seq.size()));
    validate_partition(partition);

    const GramMatrix g = gram(seq);
    const double tol = opts.tol;
    auto differs = [tol](double reported, double recomputed) { return !(std::abs(reported - recomputed) <= tol); };

    // Global bounds and the level/target bookkeeping.
    const double spectral = spectral_bessel_bound(g);
    const double schur = schur_bessel_bound(g);
    const auto& gb = report["global_bounds"];
    if (differs(gb["spectral_B"].get<double>(), spectral))
        out.global_reasons.push_back("spectral_B reported " + fmt(gb["spectral_B"].get<double>()) + ", recomputed " +
                                     fmt(spectral));
    if (differs(gb["schur_B"].get<double>(), schur))
        out.global_reasons.push_back("schur_B reported " + fmt(gb["schur_B"].get<double>()) + ", recomputed " +
                                     fmt(schur));
    const double bound = report["bessel_constant"].get<double>();
    const double computed = working_bound(g, mode);
    if (bound < computed - tol)
        out.global_reasons.push_back("bessel_constant " + fmt(bound) + " is below the computed bound " + fmt(computed));
    if (bound >= 1.0 && std::isfinite(bound)) {
        const int levels = required_levels(bound);
        if (levels != partition.levels)
            out.global_reasons.push_back("levels reported " + std::to_string(partition.levels) + ", required " +
                                         std::to_string(levels));
        if (differs(report["target"].get<double>(), std::ldexp(bound - 1.0, -levels)))
            out.global_reasons.push_back("target does not equal (B - 1) / 2^levels");
    } else {
        out.global_reasons.push_back("bessel_constant must be finite and at least 1");
    }
    if (partition.levels < 31 && partition.blocks.size() > (std::size_t{1} << partition.levels))
        out.global_reasons.push_back("more blocks than 2^levels");

    const auto recomputed = certify_blocks(g, partition.blocks, opts.threads);
    bool every_block = true;
    for (std::size_t b = 0; b < recomputed.size(); ++b) {
        const auto& blk = report["blocks"][b];
        const auto& rc = recomputed[b];
        BlockVerdict v;
        v.block = b;
        const std::pair<const char*, double> values[] = {
            {"sigma", rc.sigma},
            {"eta", rc.eta},
            {"gamma", rc.gamma},
            {"lambda_min", rc.riesz.lambda_min},
            {"lambda_max", rc.riesz.lambda_max},
            {"riesz_lower", rc.riesz.a_bound},
            {"riesz_upper", rc.riesz.b_bound},
        };
        for (const auto& [key, value] : values) {
            const double reported = blk[key].get<double>();
            if (differs(reported, value))
                v.reasons.push_back(std::string(key) + " reported " + fmt(reported) + ", recomputed " + fmt(value));
        }
        const double key_value = mode_value(mode, rc.sigma, rc.eta);
        const bool certified = below_one(key_value);
        if (blk["certified"].get<bool>() != certified) v.reasons.push_back("certified flag disagrees");
        if (blk["riesz_certified"].get<bool>() != rc.riesz.certified)
            v.reasons.push_back("riesz_certified flag disagrees");
        if (blk["borderline"].get<bool>() != near_one(key_value)) v.reasons.push_back("borderline flag disagrees");
        if (blk["spectrally_riesz"].get<bool>() != rc.riesz.spectrally_riesz)
            v.reasons.push_back("spectrally_riesz flag disagrees");
        if (!certified)
            v.reasons.push_back(std::string(mode == Mode::Feichtinger ? "sigma" : "eta") + " = " + fmt(key_value) +
                                " is not below 1");
        v.pass = v.reasons.empty();
        every_block = every_block && certified;
        out.blocks.push_back(std::move(v));
    }
    if (report["all_certified"].get<bool>() != every_block)
        out.global_reasons.push_back("all_certified flag disagrees with the blocks");

    out.global_pass = out.global_reasons.empty();
    out.all_pass = out.global_pass;
    for (const auto& v : out.blocks) out.all_pass = out.all_pass && v.pass;
    return out;
}

}  // namespace framepart
