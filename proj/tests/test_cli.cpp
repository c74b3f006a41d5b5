#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "matchkit/graph.hpp"
#include "matchkit/matrix.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = MATCHKIT_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "matchkit_cli_out.txt";
    std::string cmd = cli + " " + args + " > " + tmp.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::ostringstream os;
    os << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), os.str()};
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

}  // namespace

TEST_CASE("count subcommand") {
    fs::path ones3 = write_file("ones3.txt", "3 3\n1 1 1\n1 1 1\n1 1 1\n");
    RunResult r = run("count --matrix " + ones3.string() + " --m 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "18\n");

    RunResult brute = run("count --matrix " + ones3.string() + " --m 2 --mode brute");
    CHECK(brute.out == "18\n");

    fs::path j3 = write_file("flat3.txt", "3 3\n1/3 1/3 1/3\n1/3 1/3 1/3\n1/3 1/3 1/3\n");
    CHECK(run("count --matrix " + j3.string() + " --m 2").out == "2\n");
}

TEST_CASE("haf subcommand") {
    fs::path k4 = write_file("k4.txt", "4 4\n0 1 1 1\n1 0 1 1\n1 1 0 1\n1 1 1 0\n");
    CHECK(run("haf --matrix " + k4.string() + " --m 2").out == "3\n");
    CHECK(run("haf --matrix " + k4.string() + " --m 2 --mode brute").out == "3\n");
}

TEST_CASE("matchings subcommand") {
    fs::path c4 = write_file("c4.txt", "4\n0 1\n1 2\n2 3\n0 3\n");
    RunResult r = run("matchings --graph " + c4.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0 1\n1 4\n2 2\n");

    fs::path ones3 = write_file("ones3b.txt", "3 3\n1 1 1\n1 1 1\n1 1 1\n");
    RunResult json = run("matchings --matrix " + ones3.string() + " --json");
    CHECK(json.out.find("\"phi\":[\"1\",\"9\",\"18\",\"6\"]") != std::string::npos);
}

TEST_CASE("capacity subcommand") {
    fs::path ones3 = write_file("ones3c.txt", "3 3\n1 1 1\n1 1 1\n1 1 1\n");
    RunResult convex = run("capacity --matrix " + ones3.string() + " --k 3");
    CHECK(convex.exit_code == 0);
    CHECK(std::abs(std::stod(convex.out) - 27.0) < 1e-4);

    RunResult sink = run("capacity --matrix " + ones3.string() + " --k 3 --route sinkhorn");
    CHECK(sink.exit_code == 0);
    CHECK(std::abs(std::stod(sink.out) - 27.0) < 1e-6);

    // Sinkhorn route requires strictly positive entries: validation error.
    fs::path zero = write_file("zero22.txt", "2 2\n1 0\n1 1\n");
    CHECK(run("capacity --matrix " + zero.string() + " --k 2 --route sinkhorn").exit_code == 3);

    // A starved iteration budget is a non-convergence exit.
    fs::path skew = write_file("skew22.txt", "2 2\n9 1\n1 1\n");
    CHECK(run("capacity --matrix " + skew.string() + " --k 2 --max-iter 1").exit_code == 4);
}

TEST_CASE("approx-perm subcommand emits the sandwich") {
    fs::path j4 = write_file("flat4.txt",
                             "4 4\n1/4 1/4 1/4 1/4\n1/4 1/4 1/4 1/4\n"
                             "1/4 1/4 1/4 1/4\n1/4 1/4 1/4 1/4\n");
    RunResult r = run("approx-perm --matrix " + j4.string() + " --m 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"lower\"") != std::string::npos);
    CHECK(r.out.find("\"upper\"") != std::string::npos);
}

TEST_CASE("bounds subcommand prints the table") {
    fs::path j4 = write_file("flat4b.txt",
                             "4 4\n1/4 1/4 1/4 1/4\n1/4 1/4 1/4 1/4\n"
                             "1/4 1/4 1/4 1/4\n1/4 1/4 1/4 1/4\n");
    RunResult r = run("bounds --matrix " + j4.string() + " --m 2 --s 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ft ") != std::string::npos);
    CHECK(r.out.find("exact ") != std::string::npos);
}

TEST_CASE("classify subcommand") {
    fs::path c5 = write_file("c5.txt", "5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    RunResult r = run("classify --graph " + c5.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"hyperbolic\":false") != std::string::npos);

    fs::path k23 = write_file("k23.txt", "5\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n");
    RunResult s = run("classify --graph " + k23.string());
    CHECK(s.out.find("\"hyperbolic\":true") != std::string::npos);
}

TEST_CASE("entropy subcommand writes the CSV schema") {
    RunResult r = run("entropy --r 6 --grid 0.01 --include-p 0.6666666666666666");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("p,fh,gh,hK\n", 0) == 0);
    // The spliced 2/3 row carries the three-dimensional-grid gh value.
    std::istringstream lines(r.out);
    std::string line;
    bool found = false;
    while (std::getline(lines, line)) {
        if (line.rfind("0.666666666667,", 0) != 0) continue;
        found = true;
        auto a = line.find(','), b = line.find(',', a + 1), c = line.find(',', b + 1);
        double gh_value = std::stod(line.substr(b + 1, c - b - 1));
        CHECK(std::abs(gh_value - 0.7845241927) <= 1e-9);
    }
    CHECK(found);

    fs::path out = fs::temp_directory_path() / "curve.csv";
    RunResult f = run("entropy --r 4 --grid 0.05 --out " + out.string());
    CHECK(f.exit_code == 0);
    std::ifstream check(out);
    std::string header;
    std::getline(check, header);
    CHECK(header == "p,fh,gh,hK");
}

TEST_CASE("expect subcommand") {
    RunResult r = run("expect --n 2 --r 2 --m 2 --exact");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("formula 8/3") != std::string::npos);
    CHECK(r.out.find("exact 8/3") != std::string::npos);

    RunResult mc = run("expect --n 3 --r 2 --m 1 --trials 200 --seed 5 --json");
    CHECK(mc.exit_code == 0);
    CHECK(mc.out.find("\"mean\":6.0") != std::string::npos);  // perm_1 = rn always

    RunResult repeat = run("expect --n 3 --r 2 --m 2 --trials 200 --seed 9 --json");
    RunResult repeat2 = run("expect --n 3 --r 2 --m 2 --trials 200 --seed 9 --json");
    CHECK(repeat.out == repeat2.out);
}

TEST_CASE("dump round-trips inputs bit-exactly") {
    std::string matrix_text = "2 2\n1/3 2/3\n1 0\n";
    fs::path m = write_file("dumpme.txt", matrix_text);
    fs::path dumped = fs::temp_directory_path() / "dumped_matrix.txt";
    RunResult r = run("count --matrix " + m.string() + " --m 1 --dump " + dumped.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(dumped);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(matchkit::parse_matrix(os.str()) == matchkit::parse_matrix(matrix_text));

    std::string graph_text = "4\n0 1\n2 3\n";
    fs::path g = write_file("dumpg.txt", graph_text);
    fs::path gdump = fs::temp_directory_path() / "dumped_graph.txt";
    RunResult rg = run("classify --graph " + g.string() + " --dump " + gdump.string());
    CHECK(rg.exit_code == 0);
    std::ifstream gin(gdump);
    std::ostringstream gos;
    gos << gin.rdbuf();
    CHECK(matchkit::parse_graph(gos.str()) == matchkit::parse_graph(graph_text));
}

TEST_CASE("exit codes distinguish parse and validation failures") {
    CHECK(run("count --m 2").exit_code == 2);                  // missing required option
    CHECK(run("nonsense").exit_code == 2);                     // unknown subcommand
    fs::path ones2 = write_file("ones2.txt", "2 2\n1 1\n1 1\n");
    CHECK(run("count --matrix " + ones2.string() + " --m 5").exit_code == 3);  // m > n
    CHECK(run("count --matrix /no/such/file --m 1").exit_code == 3);
    fs::path notsym = write_file("notsym.txt", "2 2\n1 1\n0 1\n");
    CHECK(run("haf --matrix " + notsym.string() + " --m 1").exit_code == 3);
}
