// End-to-end checks of the command-line tool. Takes the binary path as
// argv[1], works inside a scratch directory, and verifies exit codes,
// byte-level determinism, and the modify/remove round trip.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok   %s\n", what.c_str());
    } else {
        std::printf("FAIL %s\n", what.c_str());
        ++g_failures;
    }
}

int run(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc < 0) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <nodegen-binary>\n");
        return 2;
    }
    const std::string bin = argv[1];
    const fs::path dir = fs::temp_directory_path() / "nodegen_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto at = [&](const std::string& name) { return (dir / name).string(); };
    const std::string quiet = " 2> " + at("stderr.log");

    // --- fit + generate determinism --------------------------------------
    check(run(bin + " fit --shape ellipse --param a=1 --param b=1 --nd 24 --out " + at("circle.json") + quiet) == 0,
          "fit on a circle succeeds");
    const std::string gen_cmd = bin + " generate --model " + at("circle.json") +
                                " --h 0.05 --seed 7 --ghost --refine 0.02 --zmap-out ";
    check(run(gen_cmd + at("z1.csv") + " --out " + at("n1.csv") + quiet) == 0, "generate succeeds");
    check(run(gen_cmd + at("z2.csv") + " --out " + at("n2.csv") + quiet) == 0, "generate again succeeds");
    check(slurp(at("n1.csv")) == slurp(at("n2.csv")), "generate output is byte-identical for a fixed seed");
    check(slurp(at("z1.csv")) == slurp(at("z2.csv")), "membership output is byte-identical");

    // different seed changes the interior
    check(run(bin + " generate --model " + at("circle.json") + " --h 0.05 --seed 8 --out " + at("n3.csv") + quiet) == 0,
          "generate with another seed succeeds");
    check(slurp(at("n1.csv")) != slurp(at("n3.csv")), "different seed produces a different node set");

    // --- histogram --------------------------------------------------------
    check(run(bin + " histogram --nodes " + at("n1.csv") + " --class interior --binwidth 0.0125 --out " +
              at("hist.txt") + quiet) == 0,
          "histogram succeeds");
    {
        std::istringstream is(slurp(at("hist.txt")));
        double edge, prev_edge = -1.0;
        long count, total = 0;
        bool monotone = true;
        while (is >> edge >> count) {
            monotone = monotone && edge > prev_edge;
            prev_edge = edge;
            total += count;
        }
        check(monotone && total > 0, "histogram is two monotone columns with positive total");
    }

    // --- modify / remove round trip ---------------------------------------
    {
        std::ofstream spec(at("embed.json"));
        spec << R"([{"shape":"ellipse","params":{"a":0.3,"b":0.2,"tilt":0.785398163,"xc":0.1,"yc":0.0},"nd":16}])";
    }
    check(run(bin + " modify --nodes " + at("n1.csv") + " --zmap " + at("z1.csv") + " --embed " + at("embed.json") +
              " --alpha auto --h 0.05 --out " + at("mod.csv") + " --zmap-out " + at("modz.csv") + quiet) == 0,
          "modify succeeds");
    check(slurp(at("mod.csv")) != slurp(at("n1.csv")), "modify changes the node file");
    check(run(bin + " remove --nodes " + at("mod.csv") + " --zmap " + at("modz.csv") + " --id 1 --out " +
              at("restored.csv") + " --zmap-out " + at("restz.csv") + quiet) == 0,
          "remove succeeds");
    check(slurp(at("restored.csv")) == slurp(at("n1.csv")), "modify then remove restores the node file bytes");
    check(slurp(at("restz.csv")) == slurp(at("z1.csv")), "membership map returns to all zeros");
    check(run(bin + " remove --nodes " + at("restored.csv") + " --zmap " + at("restz.csv") + " --id 1 --out " +
              at("x.csv") + quiet) == 4,
          "removing an unknown id exits with code 4");

    // --- sample-boundary ----------------------------------------------------
    check(run(bin + " sample-boundary --model " + at("circle.json") + " --h 0.02 --out " + at("bdry.csv") + quiet) == 0,
          "sample-boundary succeeds");
    {
        std::istringstream is(slurp(at("bdry.csv")));
        std::string line;
        std::getline(is, line);
        check(line == "x,y,class,owner", "boundary csv header");
        std::size_t rows = 0;
        while (std::getline(is, line))
            if (!line.empty()) ++rows;
        check(rows > 200, "boundary csv has a plausible node count");
    }

    // --- converge ----------------------------------------------------------
    check(run(bin + " converge --shape bump-cinf-2d --m 7 --nd-ladder 20,40,80,160 --out " + at("conv.csv") + quiet) ==
              0,
          "converge succeeds");
    {
        const std::string text = slurp(at("conv.csv"));
        const auto pos = text.find("# slope_fn=");
        check(pos != std::string::npos, "converge reports a fitted slope");
        double slope = 0.0;
        if (pos != std::string::npos) slope = std::atof(text.c_str() + pos + 11);
        check(slope <= -8.0, "smooth 2d shape converges at high order");
    }

    // --- bench (smoke) -------------------------------------------------------
    check(run(bin + " bench --dim 2 --shape star --nd 64 --h-ladder 0.06,0.04,0.02 --repeats 2 --out " + at("bench.csv") +
              quiet) == 0,
          "bench succeeds");
    {
        const std::string text = slurp(at("bench.csv"));
        check(text.find("# slope_total=") != std::string::npos, "bench reports a slope");
        std::size_t rows = 0;
        for (char c : text) rows += (c == '\n');
        check(rows == 1 + 3 * 2 + 1, "bench emits one row per (h, repeat)");
    }
    check(run(bin + " histogram --nodes " + at("n1.csv") + " --class bogus --binwidth 0.01 --out " + at("no.txt") +
              quiet) == 2,
          "unknown histogram class exits with code 2");

    // --- exit codes ----------------------------------------------------------
    check(run(bin + " fit --shape not-a-shape --nd 16 --out " + at("no.json") + quiet) == 2,
          "unknown shape exits with code 2");
    check(run(bin + " generate --model " + at("missing.json") + " --h 0.1 --out " + at("no.csv") + quiet) == 2,
          "missing model file exits with code 2");
    check(run(bin + " generate --shape ellipse --nd 24 --h -1 --out " + at("no.csv") + quiet) == 4,
          "negative spacing exits with code 4");
    check(run(bin + " generate --shape ellipse --nd 24 --out " + at("no.csv") + quiet) == 2,
          "missing required flag exits with code 2");
    {
        // duplicate parameters in a seeds file: precondition violation (4)
        std::ofstream f(at("dup.csv"));
        f << "x,y,lambda\n1,0,0\n0,1,0\n-1,0,1\n0,-1,2\n";
    }
    check(run(bin + " fit --seeds " + at("dup.csv") + " --out " + at("no.json") + quiet) == 4,
          "duplicate seed parameters exit with code 4");

    std::printf(g_failures ? "%d failure(s)\n" : "all cli checks passed\n", g_failures);
    return g_failures ? 1 : 0;
}
