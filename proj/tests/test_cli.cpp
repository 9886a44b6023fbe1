#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "affschur/cli.hpp"
#include "affschur/kl_cache.hpp"

using namespace affschur;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cmd_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    Run r = run(std::move(args));
    REQUIRE(r.code == kExitOk);
    return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("affschur_test_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Runs the installed binary in a fresh process, so in-memory tables start empty.
Run run_tool(const std::string& args, const std::string& tag) {
    fs::path out = scratch(tag + ".out"), err = scratch(tag + ".err");
    std::string cmd = std::string(AFFSCHUR_TOOL) + " " + args + " > " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("documented examples") {
    CHECK(run_json({"klpoly", "--r", "2", "--y", "2,1", "--w", "3,0"})["P"] == json{{"0", "1"}});

    json a = run_json({"afn", "--r", "2", "--z", "0,3", "--L", "4"});
    CHECK(a["a"] == 1);
    CHECK(a["certified"] == true);

    Run q = run({"qsuite", "--n", "2", "--r", "2", "--L", "4"});
    CHECK(q.code == kExitOk);
    json doc = json::parse(q.out);
    for (int i = 1; i <= 15; ++i) CHECK(doc["Q" + std::to_string(i)] == (i == 12 ? "absent-in-paper" : "pass"));
}

TEST_CASE("output is byte-stable") {
    std::vector<std::string> args{"gstruct", "--A", "1,2,1;2,1,1", "--B", "1,1,1;2,2,1"};
    Run a = run(args), b = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    for (const char* fmt : {"pretty", "csv"}) {
        auto with_fmt = args;
        with_fmt.insert(with_fmt.end(), {"--format", fmt});
        CHECK(run(with_fmt).out == run(with_fmt).out);
    }
}

TEST_CASE("inline and JSON input agree") {
    CHECK(run({"length", "--w", "0,3"}).out == run({"length", "--w", "[0,3]"}).out);
    CHECK(run({"length", "--w", "0,3"}).out == run({"length", "--w", R"({"r":2,"window":[0,3]})"}).out);
    json shifted = run_json({"length", "--w", "0,3^1"});
    CHECK(shifted["window"] == window_json(AffPerm::from_window(2, {0, 3}).rho_shifted(1)));
    CHECK(shifted["omega"] == 1);

    CHECK(run({"triple", "--A", "1,2,1;2,1,1"}).out ==
          run({"triple", "--A", R"({"n":2,"entries":[[1,2,1],[2,1,1]]})"}).out);
    CHECK(run({"cbasis", "--word", "0,1,0"}).out == run({"cbasis", "--w", "0,1,0"}).out);
}

TEST_CASE("word fallback and reduced words") {
    // 0,1,0 is not a window for r = 3, so cbasis reads it as s0 s1 s0 in r = 2.
    json c = run_json({"cbasis", "--w", "0,1,0"});
    CHECK(c["element"]["terms"].size() == 6);
    json w = run_json({"word", "--word", "0,1,0"});
    json back = run_json({"word", "--w", w["window"].dump()});
    CHECK(back["word"].size() == 3);
    CHECK(back["length"] == 3);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"length"}).code == kExitUsage);
    CHECK(run({"length", "--w", "0,3", "--frobnicate"}).code == kExitUsage);
    CHECK(run({"qsuite", "--omega-window", "3:1"}).code == kExitUsage);
    CHECK(run({"length", "--w", "0,3", "--format", "xml"}).code == kExitUsage);
    CHECK(run({"length", "--w", "0,3", "--L", "-1"}).code == kExitUsage);
    CHECK(run({"cache-stats"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);

    CHECK(run({"length", "--w", "0,0"}).code == kExitDomain);
    CHECK(run({"length", "--r", "3", "--w", "0,3"}).code == kExitDomain);
    CHECK(run({"klpoly", "--y", "0,1,2", "--w", "0,3"}).code == kExitDomain);
    CHECK(run({"triple", "--A", "1,1,-1"}).code == kExitDomain);
    CHECK(run({"triple", "--A", "3,1,1"}).code == kExitDomain);
    CHECK(run({"length", "--w", "[0,3"}).code == kExitDomain);
    CHECK(run({"length", "--w", "0,x"}).code == kExitDomain);

    // s1 s2 in r = 3: a = 1 is neither nu = 3 nor Delta = 2, so it stays uncertified.
    Run a = run({"afn", "--z", "2,3,1", "--L", "3"});
    CHECK(a.code == kExitUncertified);
    CHECK(json::parse(a.out)["certified"] == false);
    CHECK(run({"gamma", "--x", "2,3,1", "--y", "2,3,1", "--z", "2,3,1", "--L", "3"}).code == kExitUncertified);

    CheckResult ok("ok"), bad("bad"), skipped("skipped"), absent("absent");
    ok.pass();
    bad.fail("x");
    absent.status = CheckStatus::Absent;
    for (auto* c : {&ok, &bad, &skipped, &absent}) c->finish();
    CHECK(verification_exit_code({ok, skipped, absent}) == kExitOk);
    CHECK(verification_exit_code({ok, bad}) == kExitVerification);
}

TEST_CASE("environment overrides sit between flags and defaults") {
    CHECK(run_json({"afn", "--z", "0,3"})["L"] == 4);
    ::setenv("AFFSCHUR_L", "3", 1);
    CHECK(run_json({"afn", "--z", "0,3"})["L"] == 3);
    CHECK(run_json({"afn", "--z", "0,3", "--L", "5"})["L"] == 5);
    ::unsetenv("AFFSCHUR_L");

    ::setenv("AFFSCHUR_FORMAT", "csv", 1);
    CHECK(run({"length", "--w", "0,3"}).out.rfind("key,value\n", 0) == 0);
    CHECK(run({"length", "--w", "0,3", "--format", "json"}).out.front() == '{');
    ::unsetenv("AFFSCHUR_FORMAT");
}

TEST_CASE("output formats") {
    std::string pretty = run({"klpoly", "--y", "2,1", "--w", "3,0", "--format", "pretty"}).out;
    CHECK(pretty == "P: 1\nmu: 1\nprovenance: exact\n");
    std::string csv = run({"klpoly", "--y", "2,1", "--w", "3,0", "--format", "csv"}).out;
    CHECK(csv == "key,value\nP.0,1\nmu,1\nprovenance,exact\n");
}

TEST_CASE("serialization round trips") {
    HeckeElt h = c_elt(AffPerm::from_window(3, {2, 3, 1}));
    CHECK(parse_hecke(hecke_json(h).dump()) == h);
    PeriodicMatrix a = parse_matrix("1,2,1;2,1,1", 2);
    CHECK(parse_matrix(matrix_json(a).dump()) == a);
    const SchurElt& th = theta_in_phi(a);
    CHECK(parse_schur(schur_json(th).dump()) == th);
    CHECK(parse_composition(composition_json(Composition({2, 0, 1})).dump()) == Composition({2, 0, 1}));
    LaurentPoly p{{-3, mpz_class(2)}, {4, mpz_class("-123456789012345678901234567890")}};
    CHECK(poly_from_json(poly_json(p)) == p);
}

TEST_CASE("cache: cold then warm run") {
    fs::path cache = scratch("warm.jsonl");
    Run cold = run_tool("cbasis --w 0,1,0 --cache " + cache.string(), "cold");
    Run warm = run_tool("cbasis --w 0,1,0 --cache " + cache.string(), "warm");
    REQUIRE(cold.code == kExitOk);
    REQUIRE(warm.code == kExitOk);
    CHECK(cold.out == warm.out);
    CHECK(cold.err.find("hits 0, appended 9") != std::string::npos);
    CHECK(warm.err.find("loaded 9") != std::string::npos);
    CHECK(warm.err.find("hits 0") == std::string::npos);
    CHECK(warm.err.find("appended 0") != std::string::npos);

    json stats = json::parse(run_tool("cache-stats --cache " + cache.string(), "stats").out);
    CHECK(stats["lines"] == 9);
    CHECK(stats["warnings"] == 0);
}

TEST_CASE("cache: load, append and bad lines") {
    fs::path path = scratch("unit.jsonl");
    const AffPerm w = AffPerm::from_window(3, {2, 3, 1}).rho_shifted(1);
    const AffPerm e = AffPerm::identity(3).rho_shifted(1);
    {
        HeckeAlgebra alg(3);
        alg.kl_poly(e, w);
        KLCache cache(path.string(), 3);
        CHECK(cache.load(alg).loaded == 0);
        std::size_t first = cache.save(alg);
        CHECK(first > 0);
        CHECK(cache.save(alg) == 0);
    }
    const std::size_t records = scan_cache_file(path.string()).lines;

    // Duplicates are tolerated; a truncated final line is one warning.
    std::string text = slurp(path);
    {
        std::ofstream app(path, std::ios::app);
        app << text << R"({"r":3,"y":[1,2,3],"w":[2,3)";
    }
    HeckeAlgebra alg(3);
    KLCache cache(path.string(), 3);
    CacheLoadStats st = cache.load(alg);
    CHECK(st.loaded == records);
    CHECK(st.duplicates == records);
    CHECK(st.warnings == 1);
    CHECK(alg.kl_poly(e, w) == HeckeAlgebra(3).kl_poly(e, w));
    CHECK(alg.preloaded_hits() > 0);

    // Records for another period are ignored.
    HeckeAlgebra other(2);
    CacheLoadStats st2 = KLCache(path.string(), 2).load(other);
    CHECK(st2.loaded == 0);
    CHECK(st2.other_period == 2 * records);
    CHECK(other.kl_table_size() == 0);

    CacheFileStats fst = scan_cache_file(path.string());
    CHECK(fst.warnings == 1);
    CHECK(fst.per_period.at(3) == 2 * records);

    HeckeAlgebra fresh(3);
    CHECK(KLCache(scratch("missing.jsonl").string(), 3).load(fresh).loaded == 0);
}
