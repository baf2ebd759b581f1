// Command-line front end: mu tables, exact PPT-norm values with duality-gap
// certificates, the invariant verification suites, the dimension optimiser
// and LP export. Single-result commands emit JSON, tables emit CSV; all
// numerics are printed with 17 significant digits and float-mode output is
// byte-identical across runs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qdh/bounds.hpp"
#include "qdh/commutant.hpp"
#include "qdh/dense.hpp"
#include "qdh/errors.hpp"
#include "qdh/lp.hpp"
#include "qdh/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitArgument = 2;
constexpr int kExitResourceLimit = 3;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw qdh::ArgumentError("cannot open output file: " + out_path);
    os << text;
}

void require_format(std::string& format, const std::string& expected) {
    if (format.empty()) format = expected;
    if (format != expected)
        throw qdh::ArgumentError("this command only supports --format " + expected);
}

int run_mu_table(int d_min, int d_max, std::string format, const std::string& out) {
    require_format(format, "csv");
    const auto table = qdh::fig1_data(d_min, d_max);
    std::ostringstream os;
    qdh::write_mu_csv(table, os);
    emit(os.str(), out);
    return kExitOk;
}

int run_ppt_norm(int d, int k, const std::string& mode, std::string format,
                 const std::string& out) {
    require_format(format, "json");
    const qdh::Dim dim(d);
    const double upper = qdh::parity_upper_bound(dim, k);
    std::ostringstream os;
    if (mode == "rational") {
        if (k > 2 || d > 10)
            throw qdh::ArgumentError("rational mode is limited to k <= 2 and d <= 10");
        const auto res = qdh::ppt_norm<qdh::Rational>(dim, k);
        const auto frac = [](const qdh::Rational& q) {
            return q.get_num().get_str() + "/" + q.get_den().get_str();
        };
        os << "{\"d\":" << d << ",\"k\":" << k << ",\"ppt_value\":\"" << frac(res.value)
           << "\",\"upper_bound\":" << num17(upper) << ",\"duality_gap\":\"" << frac(res.gap)
           << "\",\"status\":\"" << qdh::to_string(res.status) << "\"}\n";
    } else if (mode == "float") {
        const auto res = qdh::ppt_norm<double>(dim, k);
        os << "{\"d\":" << d << ",\"k\":" << k << ",\"ppt_value\":" << num17(res.value)
           << ",\"upper_bound\":" << num17(upper) << ",\"duality_gap\":" << num17(res.gap)
           << ",\"status\":\"" << qdh::to_string(res.status) << "\"}\n";
    } else {
        throw qdh::ArgumentError("unknown mode '" + mode + "' (expected float or rational)");
    }
    emit(os.str(), out);
    return kExitOk;
}

int run_verify(const std::string& suite, std::optional<int> d, std::string format,
               const std::string& out) {
    require_format(format, "json");
    const auto checks = qdh::verify_suite(suite, d);
    int passed = 0;
    for (const auto& c : checks) passed += c.pass ? 1 : 0;
    const int failed = int(checks.size()) - passed;
    std::ostringstream os;
    os << "{\"suite\":\"" << suite << "\"";
    if (d) os << ",\"d\":" << *d;
    os << ",\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (i) os << ',';
        os << "{\"name\":\"" << json_escape(checks[i].name) << "\",\"pass\":"
           << (checks[i].pass ? "true" : "false") << ",\"detail\":\""
           << json_escape(checks[i].detail) << "\"}";
    }
    os << "],\"passed\":" << passed << ",\"failed\":" << failed
       << ",\"all_pass\":" << (failed == 0 ? "true" : "false") << "}\n";
    emit(os.str(), out);
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int run_dimension(double eps, int d_max, std::string format, const std::string& out) {
    require_format(format, "json");
    const qdh::DimResult res = qdh::dim_for_eps(eps, d_max);
    std::ostringstream os;
    os << "{\"eps\":" << num17(res.eps) << ",\"d_star\":" << res.d_star
       << ",\"k_star\":" << res.k_star << ",\"D\":" << res.D.get_str()
       << ",\"closed_bound\":" << num17(res.closed_bound) << ",\"converse\":" << num17(res.converse)
       << "}\n";
    emit(os.str(), out);
    return kExitOk;
}

int run_export_lp(int d, int k, const std::string& which, const std::string& out) {
    const qdh::Dim dim(d);
    std::ostringstream os;
    if (which == "primal")
        qdh::write_lp(qdh::build_primal<double>(dim, k), os);
    else if (which == "dual")
        qdh::write_lp(qdh::build_dual_l1<double>(dim, k), os);
    else
        throw qdh::ArgumentError("--which must be primal or dual");
    emit(os.str(), out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separable data-hiding states: PPT-norm programs and closed-form bounds"};
    app.require_subcommand(1);

    int d = 0, k = 1, d_min = 2, d_max = 1000, dim_d_max = 200;
    double eps = 0.0;
    std::string mode = "float", out, which = "primal", suite = "all";
    std::string format;

    auto* mu_cmd = app.add_subcommand("mu-table", "emit the (d, mu_d) table as CSV");
    mu_cmd->add_option("--d-min", d_min, "first dimension")->capture_default_str();
    mu_cmd->add_option("--d-max", d_max, "last dimension")->capture_default_str();
    mu_cmd->add_option("--format", format, "output format");
    mu_cmd->add_option("--out", out, "output path (default stdout)");

    auto* ppt_cmd = app.add_subcommand("ppt-norm", "exact PPT-norm bias between the parity states");
    ppt_cmd->add_option("--d", d, "local dimension")->required();
    ppt_cmd->add_option("--k", k, "tensor factors")->required();
    ppt_cmd->add_option("--mode", mode, "float or rational")->capture_default_str();
    ppt_cmd->add_option("--format", format, "output format");
    ppt_cmd->add_option("--out", out, "output path (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    verify_cmd->add_option("--suite", suite, "algebra, dense, bounds or all")->capture_default_str();
    verify_cmd->add_option("--d", d, "restrict dimension-parameterised checks to one d");
    verify_cmd->add_option("--format", format, "output format");
    verify_cmd->add_option("--out", out, "output path (default stdout)");

    auto* dim_cmd = app.add_subcommand("dimension", "minimal local dimension for a target error");
    dim_cmd->add_option("--eps", eps, "target LOCC error in (0,1)")->required();
    dim_cmd->add_option("--d-max", dim_d_max, "search cap for the base dimension")
        ->capture_default_str();
    dim_cmd->add_option("--format", format, "output format");
    dim_cmd->add_option("--out", out, "output path (default stdout)");

    auto* export_cmd = app.add_subcommand("export-lp", "write one LP in the plain-text row format");
    export_cmd->add_option("--d", d, "local dimension")->required();
    export_cmd->add_option("--k", k, "tensor factors")->required();
    export_cmd->add_option("--which", which, "primal or dual")->capture_default_str();
    export_cmd->add_option("--out", out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgument;
    }

    try {
        if (mu_cmd->parsed()) return run_mu_table(d_min, d_max, format, out);
        if (ppt_cmd->parsed()) return run_ppt_norm(d, k, mode, format, out);
        if (verify_cmd->parsed())
            return run_verify(suite, verify_cmd->count("--d") ? std::optional<int>(d) : std::nullopt,
                              format, out);
        if (dim_cmd->parsed()) return run_dimension(eps, dim_d_max, format, out);
        if (export_cmd->parsed()) return run_export_lp(d, k, which, out);
    } catch (const qdh::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResourceLimit;
    } catch (const qdh::ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return kExitArgument;
    } catch (const qdh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitArgument;
}
