// Exercises the installed command-line contract: flags, exit codes, output
// formats, determinism, and the MASIM_SEED fallback. Takes the path to the
// CLI binary as its single argument and prints one line per check.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAILED", name.c_str(), detail.empty() ? "" : " - ",
                detail.c_str());
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

RunResult run(const std::string& command, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string full = command + " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(full.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_contract <path-to-mapeaks-binary>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    char dir_template[] = "/tmp/mapeaks_cli_XXXXXX";
    const char* dir_cstr = mkdtemp(dir_template);
    if (dir_cstr == nullptr) {
        std::cerr << "cannot create temp dir\n";
        return 1;
    }
    const fs::path dir(dir_cstr);

    // --- help and usage errors -> exit 0 / 2 ------------------------------
    {
        const RunResult help = run(cli + " --help", dir);
        check("help exits 0", help.exit_code == 0);
        check("help lists subcommands", help.out.find("simulate") != std::string::npos &&
                                            help.out.find("oracle") != std::string::npos);

        check("missing subcommand exits 2", run(cli, dir).exit_code == 2);
        check("unknown subcommand exits 2", run(cli + " bogus", dir).exit_code == 2);
        check("negative q exits 2", run(cli + " simulate --q -1 --n 100", dir).exit_code == 2);
        check("n below 3 exits 2", run(cli + " simulate --q 1 --n 2", dir).exit_code == 2);
        check("unknown flag exits 2",
              run(cli + " simulate --q 1 --n 100 --frobnicate", dir).exit_code == 2);
        check("oracle d-max over 30 exits 2", run(cli + " oracle --d-max 40", dir).exit_code == 2);
        check("over-split streams exit 2",
              run(cli + " simulate --q 1 --n 5 --streams 3", dir).exit_code == 2);
    }

    // --- I/O failure -> exit 1 --------------------------------------------
    check("unwritable --out exits 1",
          run(cli + " pmf --out /nonexistent-dir/x.csv", dir).exit_code == 1);

    // --- pmf table ---------------------------------------------------------
    {
        const RunResult pmf = run(cli + " pmf", dir);
        check("pmf exits 0", pmf.exit_code == 0);
        check("pmf header and first rows",
              pmf.out.rfind("d,pmf,cdf,pi\n2,0.25,0.25,1\n3,0.25,0.5,1\n4,0.1875,0.6875,0.75\n",
                            0) == 0);
        const std::string::size_type last_row = pmf.out.rfind("\n64,");
        check("pmf tabulates through d_max", last_row != std::string::npos);
        if (last_row != std::string::npos) {
            // Row layout is d,pmf,cdf,pi; the final cdf must have converged.
            std::istringstream row(pmf.out.substr(last_row + 1));
            std::string d_field, pmf_field, cdf_field;
            std::getline(row, d_field, ',');
            std::getline(row, pmf_field, ',');
            std::getline(row, cdf_field, ',');
            check("final cdf row has converged to 1", std::stod(cdf_field) >= 1.0 - 1e-12);
        }
    }

    // --- simulate determinism and formats ----------------------------------
    {
        const fs::path h1 = dir / "h1.csv";
        const fs::path h2 = dir / "h2.csv";
        const std::string base = cli + " simulate --q 16 --n 200000 --seed 42 --out ";
        check("simulate run one exits 0", run(base + h1.string(), dir).exit_code == 0);
        check("simulate run two exits 0", run(base + h2.string(), dir).exit_code == 0);
        check("fixed seed gives byte-identical files", slurp(h1) == slurp(h2));

        const RunResult other =
            run(cli + " simulate --q 16 --n 200000 --seed 43 --out " + h2.string(), dir);
        check("different seed changes the histogram",
              other.exit_code == 0 && slurp(h1) != slurp(h2));

        const RunResult json_run =
            run(cli + " simulate --q 4 --n 5000 --seed 1 --streams 2 --format json", dir);
        check("simulate json exits 0", json_run.exit_code == 0);
        const auto doc = nlohmann::json::parse(json_run.out, nullptr, false);
        check("simulate json parses", !doc.is_discarded());
        if (!doc.is_discarded()) {
            check("simulate json echoes flags",
                  doc["metadata"]["q"] == 4 && doc["metadata"]["n"] == 5000 &&
                      doc["metadata"]["seed"] == 1 && doc["metadata"]["streams"] == 2 &&
                      doc["metadata"]["distribution"] == "normal");
            check("simulate json realized total", doc["metadata"]["realized_n"] == 5000);
        }
    }

    // --- compare report -----------------------------------------------------
    {
        const RunResult rep = run(cli + " compare --q 6 --n 50000 --seed 3 --streams 2", dir);
        check("compare exits 0", rep.exit_code == 0);
        const auto doc = nlohmann::json::parse(rep.out, nullptr, false);
        check("compare json parses", !doc.is_discarded());
        if (!doc.is_discarded()) {
            check("compare metadata echoes flags",
                  doc["metadata"]["q"] == 6 && doc["metadata"]["n"] == 50000 &&
                      doc["metadata"]["seed"] == 3 && doc["metadata"]["streams"] == 2 &&
                      doc["metadata"]["d_max"] == 64);
            check("compare has moments and bins",
                  doc["moments"].contains("mean") && doc["bins"].size() == 63);
            check("compare chi-square present for q=6", doc["chi_square"].is_object());
            bool regime_ok = true;
            for (const auto& bin : doc["bins"]) {
                const bool expected = bin["d"].get<int>() < 6;
                if (bin["in_asymptotic_regime"].get<bool>() != expected) regime_ok = false;
            }
            check("regime flag is d < q", regime_ok);
        }

        const RunResult ma1 = run(cli + " compare --q 1 --n 50000 --seed 3", dir);
        const auto doc1 = nlohmann::json::parse(ma1.out, nullptr, false);
        check("MA(1) compare still reports", ma1.exit_code == 0 && !doc1.is_discarded());
        if (!doc1.is_discarded()) {
            bool all_out = true;
            for (const auto& bin : doc1["bins"])
                if (bin["in_asymptotic_regime"].get<bool>()) all_out = false;
            check("MA(1) bins all out of regime", all_out);
            check("MA(1) chi-square is null", doc1["chi_square"].is_null());
            check("MA(1) moments still present", doc1["moments"].contains("mean"));
        }

        const RunResult csv = run(cli + " compare --q 6 --n 50000 --seed 3 --format csv", dir);
        check("compare csv header",
              csv.out.rfind("d,count,empirical_pmf,analytic_pmf,abs_error,in_asymptotic_regime\n",
                            0) == 0);
    }

    // --- oracle --------------------------------------------------------------
    {
        const RunResult oracle = run(cli + " oracle", dir);
        check("oracle exits 0", oracle.exit_code == 0);
        check("oracle d=3 row", oracle.out.find("\n3,2,2,true,") != std::string::npos);
        check("oracle has no false rows", oracle.out.find("false") == std::string::npos);

        const RunResult mc =
            run(cli + " oracle --d-max 4 --mc-samples 20000 --q 5 --seed 1 --format json", dir);
        check("oracle mc exits 0", mc.exit_code == 0);
        const auto doc = nlohmann::json::parse(mc.out, nullptr, false);
        check("oracle mc json parses", !doc.is_discarded());
        if (!doc.is_discarded()) {
            const auto& rows = doc["monte_carlo"]["rows"];
            check("oracle mc row count", rows.size() == 3);
            const double est = rows[0]["estimate"].get<double>();
            check("oracle mc d=2 near 0.25", std::fabs(est - 0.25) < 0.05);
        }
    }

    // --- MASIM_SEED fallback --------------------------------------------------
    {
        const fs::path env_out = dir / "env.csv";
        const fs::path flag_out = dir / "flag.csv";
        const std::string common = " simulate --q 4 --n 5000 --out ";
        run("MASIM_SEED=7 " + cli + common + env_out.string(), dir);
        run(cli + common + flag_out.string() + " --seed 7", dir);
        check("MASIM_SEED supplies the default seed",
              !slurp(env_out).empty() && slurp(env_out) == slurp(flag_out));

        run("MASIM_SEED=9 " + cli + common + env_out.string() + " --seed 7", dir);
        check("explicit --seed wins over MASIM_SEED", slurp(env_out) == slurp(flag_out));
    }

    std::error_code ec;
    fs::remove_all(dir, ec);

    if (g_failures == 0) {
        std::printf("cli_contract: all checks passed\n");
        return 0;
    }
    std::printf("cli_contract: %d check(s) FAILED\n", g_failures);
    return 1;
}
