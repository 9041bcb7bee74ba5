#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latcoh/cli.hpp"
#include "latcoh/document.hpp"
#include "latcoh/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace latcoh;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json structured_of(const std::string& text) {
    auto pos = text.find("--- structured ---\n");
    REQUIRE(pos != std::string::npos);
    return json::parse(text.substr(pos + 19));
}

} // namespace

TEST_CASE("document round trip") {
    GroupLattice m = builtin_lattice("augmentation:4");
    GroupLattice back = parse_document(emit_document(m));
    CHECK(back.sigma == m.sigma);
    CHECK(back.base == m.base);
    CHECK(back.group.order == m.group.order);

    GroupLattice tw = builtin_lattice("zeta-twist:3");
    GroupLattice tw2 = parse_document(emit_document(tw));
    CHECK(tw2.sigma == tw.sigma);
    CHECK(*tw2.zeta == *tw.zeta);
}

TEST_CASE("document parser accepts comments and rejects junk") {
    CHECK_NOTHROW(parse_document("latcoh lattice v1\n# comment\nbase Z\ngroup cyclic 2\n"
                                 "rank 1\nsigma\n-1\nend\n"));
    CHECK_THROWS_AS(parse_document("latcoh lattice v2\nbase Z\n"), ParseError);
    CHECK_THROWS_AS(parse_document("latcoh lattice v1\nbase Q\ngroup cyclic 2\nrank 1\n"
                                   "sigma\n1\nend\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("latcoh lattice v1\nbase Z\ngroup cyclic 2\nrank 2\n"
                                   "sigma\n1 x\n0 1\nend\n"),
                    ParseError);
    // Well-formed but invalid: sigma^2 != 1.
    CHECK_THROWS_AS(parse_document("latcoh lattice v1\nbase Z\ngroup cyclic 2\nrank 1\n"
                                   "sigma\n2\nend\n"),
                    InvariantViolation);
    // zeta without a cyclotomic base: well-formed text, invalid lattice.
    CHECK_THROWS_AS(parse_document("latcoh lattice v1\nbase Z\ngroup cyclic 2\nrank 1\n"
                                   "sigma\n1\nzeta\n1\nend\n"),
                    InvariantViolation);
}

TEST_CASE("builtin generators") {
    CHECK(builtin_lattice("regular:4").z_rank == 4);
    CHECK(builtin_lattice("trivial:7").z_rank == 1);
    CHECK(builtin_lattice("augmentation:6").z_rank == 5);
    CHECK(builtin_lattice("permutation:6:3,2,1").z_rank == 6);
    CHECK(builtin_lattice("zeta-twist:5").z_rank == 4);
    // Gaussian variant: rank 2 over Z[i], sigma of order 4.
    CHECK(builtin_lattice("zeta-twist:2").z_rank == 2);
    CHECK(builtin_lattice("zeta-twist:2").group.order == 4);
    CHECK_THROWS_AS(builtin_lattice("permutation:6:5"), ParseError);
    CHECK_THROWS_AS(builtin_lattice("nonsense:1"), ParseError);
}

TEST_CASE("cohomology command") {
    RunResult r = run({"cohomology", "--builtin", "augmentation:4", "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    CHECK(rep["command"] == "cohomology");
    bool saw_full = false;
    for (const auto& row : rep["results"]["profile"]) {
        if (row["subgroup_order"] == 4) {
            saw_full = true;
            CHECK(row["h1"]["invariants"]["torsion"] == json::array({"4"}));
        }
    }
    CHECK(saw_full);
}

TEST_CASE("cohomology --subgroup filters") {
    RunResult r = run({"cohomology", "--builtin", "regular:6", "--subgroup", "3",
                       "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    REQUIRE(rep["results"]["profile"].size() == 1);
    CHECK(rep["results"]["profile"][0]["subgroup_order"] == 3);

    RunResult bad = run({"cohomology", "--builtin", "regular:6", "--subgroup", "5"});
    CHECK(bad.code == kExitParse);
}

TEST_CASE("classify command") {
    SUBCASE("permutation lattice") {
        RunResult r = run({"classify", "--builtin", "permutation:6:6,1", "--format",
                           "structured"});
        CHECK(r.code == kExitOk);
        json rep = json::parse(r.out);
        CHECK(rep["results"]["flabby"] == true);
        CHECK(rep["results"]["coflabby"] == true);
    }
    SUBCASE("zeta twist with witness") {
        RunResult r = run({"classify", "--builtin", "zeta-twist:3", "--format", "structured"});
        json rep = json::parse(r.out);
        CHECK(rep["results"]["flabby"] == false);
        CHECK(rep["results"]["flabby_witness"]["group"]["torsion"] == json::array({"3"}));
    }
    SUBCASE("augmentation ideal is not coflabby") {
        RunResult r = run({"classify", "--builtin", "augmentation:4", "--format", "structured"});
        json rep = json::parse(r.out);
        CHECK(rep["results"]["coflabby"] == false);
    }
}

TEST_CASE("resolve command emits re-parsable documents") {
    RunResult r = run({"resolve", "--builtin", "augmentation:3", "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    CHECK(rep["results"]["exact"] == true);
    CHECK(rep["results"]["outer_flabby"] == true);
    GroupLattice middle = parse_document(rep["results"]["middle_document"].get<std::string>());
    GroupLattice outer = parse_document(rep["results"]["outer_document"].get<std::string>());
    CHECK(middle.z_rank ==
          rep["results"]["middle_rank"].get<long>());
    CHECK(outer.z_rank == rep["results"]["outer_rank"].get<long>());
}

TEST_CASE("decompose command") {
    RunResult r = run({"decompose", "--builtin", "regular:6", "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    CHECK(rep["results"]["rank_identity"] == true);
    CHECK(rep["results"]["components"].size() == 4);
    for (const auto& c : rep["results"]["components"]) {
        CHECK(c["zeta_rank"] == 1);
        CHECK(c["steinitz"]["class"] == "trivial");
    }
}

TEST_CASE("dedekind command") {
    RunResult r = run({"dedekind", "--n", "12", "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    CHECK(rep["results"]["all_maximal"] == true);
    CHECK(rep["results"]["checked"].size() == 2);
}

TEST_CASE("example-4-3 command") {
    RunResult r = run({"example-4-3", "--p", "3", "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    CHECK(rep["results"]["verdict"] == "NotInvertible");
    CHECK(rep["results"]["hypotheses_violated"] == true);
    CHECK(rep["results"]["h_minus1_m_blocks"] == json::array({1}));

    RunResult bad = run({"example-4-3", "--p", "11"});
    CHECK(bad.code == kExitUnsupported);
}

TEST_CASE("exit codes are distinct") {
    CHECK(run({"cohomology", "/nonexistent/file"}).code == kExitParse);
    CHECK(run({"example-4-3", "--p", "9"}).code == kExitUnsupported);
    // Well-formed document violating lattice invariants.
    std::string doc = "latcoh lattice v1\nbase Z\ngroup cyclic 2\nrank 1\nsigma\n3\nend\n";
    std::string path = "/tmp/latcoh_bad_lattice.doc";
    {
        std::ofstream f(path);
        f << doc;
    }
    CHECK(run({"classify", path}).code == kExitInvariant);
}

TEST_CASE("file input: emitted documents feed back through the CLI") {
    GroupLattice m = builtin_lattice("regular:6");
    std::string path = "/tmp/latcoh_regular6.doc";
    {
        std::ofstream f(path);
        f << emit_document(m);
    }
    RunResult r = run({"cohomology", path, "--format", "structured"});
    CHECK(r.code == kExitOk);
    json rep = json::parse(r.out);
    for (const auto& row : rep["results"]["profile"]) {
        CHECK(row["h_minus1"]["invariants"]["torsion"].empty());
        CHECK(row["h1"]["invariants"]["torsion"].empty());
    }
    // Builtin and file inputs produce the same digest (same canonical form).
    RunResult b = run({"cohomology", "--builtin", "regular:6", "--format", "structured"});
    CHECK(json::parse(b.out)["input_digest"] == rep["input_digest"]);
}

TEST_CASE("structured reports are byte-identical across runs") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"cohomology", "--builtin", "regular:4", "--format",
                                   "structured"},
          std::vector<std::string>{"classify", "--builtin", "zeta-twist:3", "--format",
                                   "structured"},
          std::vector<std::string>{"resolve", "--builtin", "augmentation:3", "--format",
                                   "structured"},
          std::vector<std::string>{"decompose", "--builtin", "regular:6", "--format",
                                   "structured"},
          std::vector<std::string>{"dedekind", "--n", "9", "--format", "structured"}}) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("text format embeds the structured section") {
    RunResult r = run({"classify", "--builtin", "trivial:3"});
    CHECK(r.code == kExitOk);
    json rep = structured_of(r.out);
    CHECK(rep["results"]["flabby"] == true);
    // Wall clock lives only in the human section.
    CHECK(r.out.find("wall clock:") != std::string::npos);
    CHECK(rep.dump().find("wall") == std::string::npos);
}

TEST_CASE("seed is echoed into the digest") {
    RunResult a = run({"dedekind", "--n", "4", "--seed", "1", "--format", "structured"});
    RunResult b = run({"dedekind", "--n", "4", "--seed", "2", "--format", "structured"});
    json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["input_digest"] != jb["input_digest"]);
    CHECK(ja["results"] == jb["results"]);
}
