// fbh: Bergman kernel evaluation and verification suites for the domains
// D_{n,m}(mu) = { (z,w) : ||w||^2 < exp(-mu ||z||^2) }.
//
// Exit codes: 0 success / all checks pass, 1 usage or parse error,
// 2 mathematical precondition violation (exterior point, divergence, ...).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbh/kernel.hpp"
#include "fbh/serialize.hpp"
#include "fbh/suite.hpp"

namespace {

using fbh::Json;

// Comma-separated re,im pairs, z-part then w-part: 2(n+m) numbers.
fbh::Point parse_flat_point(const std::string& text, int n, int m) {
    std::vector<double> nums;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
        nums.push_back(v);
    }
    if (static_cast<int>(nums.size()) != 2 * (n + m))
        throw std::invalid_argument("point needs " + std::to_string(2 * (n + m)) +
                                    " numbers (re,im pairs, z then w)");
    fbh::Point p{fbh::Vector(n), fbh::Vector(m)};
    for (int j = 0; j < n; ++j) p.z[j] = {nums[2 * j], nums[2 * j + 1]};
    for (int i = 0; i < m; ++i) p.w[i] = {nums[2 * n + 2 * i], nums[2 * n + 2 * i + 1]};
    return p;
}

fbh::Point parse_point(const std::string& text, int n, int m, bool json_mode) {
    if (!json_mode) return parse_flat_point(text, n, m);
    const fbh::Point p = fbh::point_from_json(Json::parse(text));
    if (p.z.size() != n || p.w.size() != m)
        throw std::invalid_argument("JSON point dimensions disagree with --n/--m");
    return p;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
        f << j.dump(2) << "\n";
    }
}

int suite_thread_cap() {
    if (const char* env = std::getenv("FBH_SUITE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman kernel laboratory for Fock-Bargmann-Hartogs domains"};
    app.require_subcommand(1);

    // --- kernel ---
    auto* cmd_kernel = app.add_subcommand("kernel", "evaluate the Bergman kernel at a point pair");
    int kn = 1, km = 1;
    double kmu = 1.0, ktol = fbh::defaults::series_tol;
    long kmax_terms = fbh::defaults::series_max_terms;
    std::string kp, kq, kout;
    bool kjson = false;
    cmd_kernel->add_option("--n", kn, "z-dimension")->check(CLI::PositiveNumber);
    cmd_kernel->add_option("--m", km, "w-dimension")->check(CLI::PositiveNumber);
    cmd_kernel->add_option("--mu", kmu, "weight exponent")->check(CLI::PositiveNumber);
    cmd_kernel->add_option("--p", kp, "first point, re,im pairs (z then w)")->required();
    cmd_kernel->add_option("--q", kq, "second point")->required();
    cmd_kernel->add_option("--tol", ktol, "series tail tolerance");
    cmd_kernel->add_option("--max-terms", kmax_terms, "series term cap");
    cmd_kernel->add_flag("--json", kjson, "points are JSON objects; output JSON");
    cmd_kernel->add_option("--out", kout, "write JSON result to this file");

    // --- suite ---
    auto* cmd_suite = app.add_subcommand("suite", "run a verification suite");
    std::string sname;
    std::uint64_t sseed = 42;
    double stol = fbh::defaults::series_tol;
    std::string sout;
    bool stiming = false;
    cmd_suite->add_option("name", sname, "kernel | automorphism | proper-map | oracle | all")
        ->required();
    cmd_suite->add_option("--seed", sseed, "random seed");
    cmd_suite->add_option("--tol", stol, "series tail tolerance override");
    cmd_suite->add_option("--out", sout, "write the JSON report to this file");
    cmd_suite->add_flag("--timing", stiming,
                        "embed real wall time in the report (breaks byte determinism)");

    // --- decompose ---
    auto* cmd_dec = app.add_subcommand("decompose",
                                       "check a linear map against the rescaling normal form");
    std::string dmatrix, dout;
    int dn = 1, dm = 1;
    double dmu = 1.0, dmuprime = 1.0, dtol = 1e-8;
    cmd_dec->add_option("--matrix", dmatrix, "JSON matrix file ('-' for stdin)")->required();
    cmd_dec->add_option("--n", dn, "z-dimension")->check(CLI::PositiveNumber);
    cmd_dec->add_option("--m", dm, "w-dimension")->check(CLI::PositiveNumber);
    cmd_dec->add_option("--mu", dmu, "source weight exponent")->check(CLI::PositiveNumber);
    cmd_dec->add_option("--muprime", dmuprime, "target weight exponent")->check(CLI::PositiveNumber);
    cmd_dec->add_option("--tol", dtol, "block tolerance");
    cmd_dec->add_option("--out", dout, "write JSON result to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_kernel->parsed()) {
            const fbh::FBHDomain d(kn, km, kmu);
            const fbh::Point p = parse_point(kp, kn, km, kjson);
            const fbh::Point q = parse_point(kq, kn, km, kjson);
            fbh::SeriesControl ctl;
            ctl.tol = ktol;
            ctl.max_terms = kmax_terms;
            const fbh::KernelValue kv = fbh::kernel(d, p, q, ctl);
            if (kjson || !kout.empty()) {
                Json j{{"schema_version", 1}};
                j.update(fbh::to_json(kv));
                emit(j, kout);
            }
            if (kout.empty() && !kjson) {
                std::cout << "K = " << kv.value.real();
                if (kv.value.imag() != 0.0) std::cout << " + " << kv.value.imag() << "i";
                std::cout << "  (tail_bound = " << kv.tail_bound
                          << ", terms_used = " << kv.terms_used << ")\n";
            }
            return 0;
        }

        if (cmd_suite->parsed()) {
            const auto& names = fbh::suite_names();
            if (std::find(names.begin(), names.end(), sname) == names.end()) {
                std::cerr << "error: unknown suite '" << sname << "'\n";
                return 1;
            }
            fbh::SuiteOptions opts;
            opts.series_tol = stol;
            opts.threads = suite_thread_cap();
            opts.record_wall_time = stiming;
            const fbh::SuiteReport rep = fbh::run_suite(sname, sseed, opts);
            emit(fbh::to_json(rep), sout);
            int failed = 0;
            for (const fbh::CheckResult& c : rep.checks)
                if (!c.pass) ++failed;
            std::cerr << "suite '" << rep.suite_name << "': " << rep.checks.size() - failed << "/"
                      << rep.checks.size() << " checks passed (seed " << rep.seed << ")\n";
            for (const fbh::CheckResult& c : rep.checks)
                if (!c.pass)
                    std::cerr << "  FAIL " << c.name << ": measured " << c.measured
                              << " vs threshold " << c.threshold << " [" << c.paper_anchor
                              << "]\n";
            return rep.all_pass() ? 0 : 2;
        }

        if (cmd_dec->parsed()) {
            std::string text;
            if (dmatrix == "-") {
                std::stringstream buf;
                buf << std::cin.rdbuf();
                text = buf.str();
            } else {
                std::ifstream f(dmatrix);
                if (!f) throw std::invalid_argument("cannot open matrix file: " + dmatrix);
                std::stringstream buf;
                buf << f.rdbuf();
                text = buf.str();
            }
            Json j = Json::parse(text);
            if (j.is_object() && j.contains("matrix")) j = j["matrix"];
            const fbh::Matrix M = fbh::matrix_from_json(j);
            const fbh::LinearBiholomorphism L{fbh::FBHDomain(dn, dm, dmu),
                                              fbh::FBHDomain(dn, dm, dmuprime), M};
            const fbh::Decomposition dec = fbh::decompose_linear_biholomorphism(L, dtol);
            Json out{{"schema_version", 1}};
            out.update(fbh::to_json(dec));
            emit(out, dout);
            return 0;
        }
    } catch (const Json::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fbh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
