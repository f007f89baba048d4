// frame_partition: generate, analyze, partition and certify finite unit-vector
// systems.
//
// Exit codes: 0 success/certified, 2 usage or format error, 3 IO failure,
// 4 norm violation, 5 uncertified block.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "framepart/analysis.hpp"
#include "framepart/generators.hpp"
#include "framepart/io.hpp"
#include "framepart/partition.hpp"
#include "framepart/report.hpp"

namespace fp = framepart;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kIo = 3,
    kNorm = 4,
    kUncertified = 5,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Hardware concurrency, capped by FRAME_PARTITION_THREADS when set.
unsigned worker_threads(std::optional<unsigned> requested) {
    unsigned threads = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("FRAME_PARTITION_THREADS"); env && *env) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (*end != '\0' || cap < 1) throw UsageError("FRAME_PARTITION_THREADS must be a positive integer");
        threads = std::min(threads, static_cast<unsigned>(cap));
    }
    return std::max(1u, threads);
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct GenerateArgs {
    std::string kind;
    std::size_t dim = 1;
    std::size_t count = 1;
    double angle = 0.0;
    std::size_t multiplicity = 1;
    std::uint64_t seed = 0;
    std::string field = "real";
    std::string output;
    std::string format;
};

int run_generate(const GenerateArgs& args) {
    fp::GeneratorSpec spec;
    try {
        spec.kind = fp::generator_kind_from_string(args.kind);
        spec.field = fp::field_from_string(args.field);
    } catch (const fp::ArgumentError& e) {
        throw UsageError(e.what());
    }
    spec.dim = args.dim;
    spec.count = args.count;
    spec.angle = args.angle;
    spec.multiplicity = args.multiplicity;
    spec.seed = args.seed;

    fp::UnitVectorSequence seq = [&] {
        try {
            return fp::generate(spec);
        } catch (const fp::ArgumentError& e) {
            throw UsageError(e.what());
        }
    }();

    fp::VectorFormat format = args.output.empty() ? fp::VectorFormat::Json : fp::format_for_path(args.output);
    if (args.format == "json") format = fp::VectorFormat::Json;
    else if (args.format == "csv") format = fp::VectorFormat::Csv;

    if (args.output.empty() || args.output == "-") std::cout << fp::serialize_vectors(seq, format);
    else fp::write_vector_file(args.output, seq, format);
    return kOk;
}

int run_analyze(const std::string& input, bool as_json, bool renormalize) {
    const auto seq = fp::read_vector_file(input, renormalize);
    const auto g = fp::gram(seq);
    const auto bessel = fp::bessel_report(g);
    const auto all = fp::full_block(seq.size());
    const auto sep = fp::separation_report(g, all);

    if (as_json) {
        json out;
        out["input_digest"] = fp::input_digest(seq);
        out["n"] = seq.size();
        out["dim"] = seq.dim();
        out["field"] = fp::to_string(seq.field());
        out["spectral_B"] = bessel.spectral_bound;
        out["schur_B"] = bessel.schur_bound;
        out["sigma"] = sep.sigma;
        out["eta"] = sep.eta;
        out["gamma"] = sep.gamma;
        out["riesz_certified"] = sep.sigma < 1.0;
        out["uniformly_separated"] = sep.eta < 1.0;
        out["separated"] = sep.gamma < 1.0;
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "vectors     " << seq.size() << " in dimension " << seq.dim() << " (" << fp::to_string(seq.field())
              << ")\n"
              << "spectral_B  " << num(bessel.spectral_bound) << "\n"
              << "schur_B     " << num(bessel.schur_bound) << "\n"
              << "sigma       " << num(sep.sigma) << (sep.sigma < 1.0 ? "  (Riesz certified)" : "") << "\n"
              << "eta         " << num(sep.eta) << (sep.eta < 1.0 ? "  (uniformly separated)" : "") << "\n"
              << "gamma       " << num(sep.gamma) << (sep.gamma < 1.0 ? "  (separated)" : "") << "\n";
    return kOk;
}

struct PartitionArgs {
    std::string input;
    std::string mode = "feichtinger";
    std::optional<double> bessel_override;
    std::string output;
    bool renormalize = false;
    std::optional<unsigned> threads;
};

int run_partition(const PartitionArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const auto seq = fp::read_vector_file(args.input, args.renormalize);

    fp::PartitionOptions opts;
    opts.bessel_override = args.bessel_override;
    opts.threads = worker_threads(args.threads);
    const auto started = std::chrono::steady_clock::now();
    const auto cert = [&] {
        try {
            return fp::partition_sequence(seq, fp::mode_from_string(args.mode), opts);
        } catch (const fp::ArgumentError& e) {
            throw UsageError(e.what());
        }
    }();

    fp::ReportContext ctx;
    ctx.input_digest = fp::input_digest(seq);
    ctx.dim = seq.dim();
    ctx.field = seq.field();
    ctx.timings_ms["partition_ms"] = elapsed_ms(started);
    ctx.timings_ms["total_ms"] = elapsed_ms(start);
    const auto report = fp::certificate_to_json(cert, ctx);

    if (args.output.empty() || args.output == "-") std::cout << report.dump(2) << "\n";
    else fp::write_text_file(args.output, report.dump(2) + "\n");

    std::ostream& log = args.output.empty() || args.output == "-" ? std::cerr : std::cout;
    log << "mode " << fp::to_string(cert.mode) << ", B = " << num(cert.global_bound) << ", levels = "
        << cert.partition.levels << ", target = " << num(cert.target) << ", blocks = " << cert.per_block.size()
        << ", all_certified = " << (cert.all_certified ? "true" : "false") << "\n";
    if (cert.levels_borderline) log << "note: B - 1 lies within 1e-12 of a power of two\n";
    for (std::size_t b = 0; b < cert.per_block.size(); ++b) {
        const auto& blk = cert.per_block[b];
        const double key = cert.mode == fp::Mode::Feichtinger ? blk.sigma : blk.eta;
        if (key >= 1.0) log << "block " << b << " is not certified (" << num(key) << " >= 1)\n";
        else if (key >= 1.0 - fp::kBorderlineWidth) log << "block " << b << " is borderline (" << num(key) << ")\n";
    }
    return cert.all_certified ? kOk : kUncertified;
}

struct CertifyArgs {
    std::string input;
    std::string report;
    double tol = fp::kReportTol;
    bool force = false;
    bool renormalize = false;
    std::optional<unsigned> threads;
};

int run_certify(const CertifyArgs& args) {
    const auto seq = fp::read_vector_file(args.input, args.renormalize);
    json report;
    try {
        report = json::parse(fp::read_text_file(args.report));
    } catch (const json::parse_error& e) {
        throw fp::FormatError(std::string("report is not valid JSON: ") + e.what());
    }
    fp::CertifyOptions opts;
    opts.tol = args.tol;
    opts.force = args.force;
    opts.threads = worker_threads(args.threads);
    const auto outcome = fp::certify_report(seq, report, opts);

    if (!outcome.digest_matches) std::cout << "WARNING digest mismatch accepted (--force)\n";
    std::cout << (outcome.global_pass ? "PASS" : "FAIL") << " global bounds\n";
    for (const auto& r : outcome.global_reasons) std::cout << "  " << r << "\n";
    for (const auto& v : outcome.blocks) {
        std::cout << (v.pass ? "PASS" : "FAIL") << " block " << v.block << " ("
                  << report["blocks"][v.block]["indices"].size() << " vectors)\n";
        for (const auto& r : v.reasons) std::cout << "  " << r << "\n";
    }
    std::cout << (outcome.all_pass ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
    return outcome.all_pass ? kOk : kUncertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riesz certificates and finite partitions for unit-vector systems"};
    app.set_version_flag("--version", std::string(fp::kToolVersion));
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a generated vector file");
    generate->add_option("--kind", gen.kind, "orthonormal|duplicates|angle_pair|basis_union|harmonic|random_unit")
        ->required();
    generate->add_option("--dim", gen.dim, "Ambient dimension")->check(CLI::PositiveNumber);
    generate->add_option("--count", gen.count, "Number of vectors")->check(CLI::PositiveNumber);
    generate->add_option("--angle", gen.angle, "Angle in radians, [0, pi/2]");
    generate->add_option("--multiplicity", gen.multiplicity, "Copies for duplicates")->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen.seed, "Seed for random_unit");
    generate->add_option("--field", gen.field, "real|complex")->check(CLI::IsMember({"real", "complex"}));
    generate->add_option("-o,--output", gen.output, "Output path (.json or .csv); stdout when omitted");
    generate->add_option("--format", gen.format, "Force json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string analyze_input;
    bool analyze_json = false;
    bool analyze_renormalize = false;
    auto* analyze = app.add_subcommand("analyze", "Print Bessel bounds and sigma, eta, gamma");
    analyze->add_option("input", analyze_input, "Vector file")->required();
    analyze->add_flag("--json", analyze_json, "Emit JSON");
    analyze->add_flag("--renormalize", analyze_renormalize, "Rescale vectors to unit norm on load");

    PartitionArgs part;
    auto* partition = app.add_subcommand("partition", "Partition into certified blocks and write a report");
    partition->add_option("input", part.input, "Vector file")->required();
    partition->add_option("--mode", part.mode, "feichtinger|uniform")
        ->check(CLI::IsMember({"feichtinger", "uniform"}));
    partition->add_option("--bessel-override", part.bessel_override, "Use this Bessel constant (>= computed)");
    partition->add_option("-o,--output", part.output, "Report path; stdout when omitted");
    partition->add_flag("--renormalize", part.renormalize, "Rescale vectors to unit norm on load");
    partition->add_option("--threads", part.threads, "Certification threads")->check(CLI::PositiveNumber);

    CertifyArgs cert;
    auto* certify = app.add_subcommand("certify", "Independently re-check a certificate report");
    certify->add_option("input", cert.input, "Vector file")->required();
    certify->add_option("report", cert.report, "Certificate report")->required();
    certify->add_option("--tol", cert.tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
    certify->add_flag("--force", cert.force, "Accept a report whose digest does not match the input");
    certify->add_flag("--renormalize", cert.renormalize, "Rescale vectors to unit norm on load");
    certify->add_option("--threads", cert.threads, "Certification threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*analyze) return run_analyze(analyze_input, analyze_json, analyze_renormalize);
        if (*partition) return run_partition(part);
        if (*certify) return run_certify(cert);
    } catch (const fp::NormViolation& e) {
        std::cerr << "error: norm violation at";
        for (const auto& o : e.offenders()) std::cerr << " index " << o.index << " (norm " << num(o.norm) << ")";
        std::cerr << "\n";
        return kNorm;
    } catch (const fp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const fp::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const fp::IndexMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const fp::DigestMismatch& e) {
        std::cerr << "error: " << e.what() << " (use --force to override)\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
