#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "floercalc/cli.hpp"
#include "floercalc/corpus.hpp"
#include "floercalc/io.hpp"

using namespace floercalc;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  CliResult r;
  r.code = run_cli(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

// Fresh scratch directory per process run; files within it are keyed by name.
const fs::path& scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "floercalc-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file_with(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  write_text_file(p.string(), text);
  return p.string();
}

std::string path_of(const std::string& name) {
  return (scratch() / name).string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("corpus commands list and emit the built in entries") {
  CliResult list = run({"corpus", "list"});
  CHECK(list.code == 0);
  for (const std::string& n : corpus_names()) CHECK(contains(list.out, n));

  CliResult once = run({"corpus", "emit", "poincare"});
  CHECK(once.code == 0);
  CliResult twice = run({"corpus", "emit", "poincare"});
  CHECK(once.out == twice.out);  // byte identical

  FloerComplex parsed = complex_from_json(parse_json_text(once.out));
  CHECK(parsed == build("poincare").complex);

  CliResult to_file =
      run({"corpus", "emit", "torus_model", "-o", path_of("torus.json")});
  CHECK(to_file.code == 0);
  FloerComplex torus =
      complex_from_json(load_json_file(path_of("torus.json")));
  CHECK(torus == build("torus_model").complex);

  CHECK(run({"corpus", "emit", "nonsense"}).code == 2);
}

TEST_CASE("invariants on the emitted example reproduce its numbers") {
  run({"corpus", "emit", "poincare", "-o", path_of("p.json")});

  CliResult r = run({"invariants", path_of("p.json"), "--ring", "Q"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "h = 1 (span 1, prefix 1)"));
  CHECK(contains(r.out, "lambda = -1"));
  CHECK(contains(r.out, "chi = 2"));
  CHECK(contains(r.out, "reduced dims: 0 0 0 0 0 0 0 0"));
  CHECK(contains(r.out, "nilpotency index = 0"));

  CliResult j =
      run({"invariants", path_of("p.json"), "--ring", "F5", "--format",
           "json"});
  CHECK(j.code == 0);
  Json parsed = parse_json_text(j.out);
  CHECK(parsed["h"] == 1);
  CHECK(parsed["chi"] == 2);
  CHECK(parsed["lambda"] == "-1");
  CHECK(parsed["nilpotency_index"] == 0);
  CHECK(parsed["ring"] == "F5");

  // json output is deterministic byte for byte
  CliResult j2 =
      run({"invariants", path_of("p.json"), "--ring", "F5", "--format",
           "json"});
  CHECK(j.out == j2.out);

  // no h block in the admissible flavor, but nilpotency is still there
  run({"corpus", "emit", "jordan_block", "-o", path_of("jb.json")});
  CliResult adm = run({"invariants", path_of("jb.json")});
  CHECK(adm.code == 0);
  CHECK(!contains(adm.out, "h ="));
  CHECK(contains(adm.out, "nilpotency index = 2"));
}

TEST_CASE("exit codes separate malformed input from failed mathematics") {
  // structurally broken: not json at all
  std::string bad = file_with("bad.json", "this is not json\n");
  CliResult r = run({"validate", bad});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "malformed"));

  // structurally fine, mathematically wrong: d then d hits a generator
  std::string nonsq = file_with("nonsq.json", R"({
    "flavor": "homology_sphere",
    "generators": [{"id": "x", "degree": 0}, {"id": "y", "degree": 1},
                   {"id": "z", "degree": 2}],
    "d": [{"from": "x", "to": "y", "coeff": 1},
          {"from": "y", "to": "z", "coeff": 1}],
    "v": [],
    "delta": {},
    "delta_prime": {}
  })");
  CliResult inv = run({"validate", nonsq});
  CHECK(inv.code == 1);
  CHECK(contains(inv.out, "invalid:"));

  CliResult invj = run({"validate", nonsq, "--format", "json"});
  CHECK(invj.code == 1);
  CHECK(parse_json_text(invj.out)["ok"] == false);

  // a good complex validates cleanly
  run({"corpus", "emit", "s3", "-o", path_of("s3.json")});
  CHECK(run({"validate", path_of("s3.json")}).code == 0);

  // flag level problems are all exit 2
  CHECK(run({"invariants", path_of("s3.json"), "--ring", "Z"}).code == 2);
  CHECK(run({"invariants", path_of("s3.json"), "--ring", "F2"}).code == 2);
  CHECK(run({"invariants", path_of("s3.json"), "--ring", "F9"}).code == 2);
  CHECK(run({"invariants", path_of("s3.json"), "--ring", "banana"}).code ==
        2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"invariants", path_of("does-not-exist.json")}).code == 2);
  CHECK(run({"lattice"}).code == 2);  // missing nested subcommand
  CHECK(run({}).code == 2);           // missing subcommand entirely

  // help goes to stdout and succeeds
  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "invariants"));
  CHECK(contains(help.out, "lattice"));
}

TEST_CASE("cohomology over the integers sees torsion that fields hide") {
  run({"corpus", "emit", "torsion_block", "-o", path_of("t.json")});

  CliResult z = run({"cohomology", path_of("t.json"), "--ring", "Z"});
  CHECK(z.code == 0);
  CHECK(contains(z.out, "HF^3: Z/2"));
  CHECK(contains(z.out, "HF^2: 0"));

  CliResult f3 = run({"cohomology", path_of("t.json"), "--ring", "F3"});
  CHECK(f3.code == 0);
  CHECK(contains(f3.out, "HF dims: 0 0 0 0 0 0 0 0"));

  CliResult zj =
      run({"cohomology", path_of("t.json"), "--ring", "Z", "--format",
           "json"});
  Json parsed = parse_json_text(zj.out);
  CHECK(parsed["torsion"][3][0] == 2);
  CHECK(parsed["free_rank"] == Json::array({0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("reverse writes the orientation reverse and is an involution") {
  run({"corpus", "emit", "poincare", "-o", path_of("p.json")});

  CliResult r1 = run({"reverse", path_of("p.json"), "-o", path_of("r.json")});
  CHECK(r1.code == 0);
  CliResult r2 = run({"reverse", path_of("r.json"), "-o", path_of("rr.json")});
  CHECK(r2.code == 0);

  std::ifstream a(path_of("p.json")), b(path_of("rr.json"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());  // reverse twice, byte identical

  // one reverse matches the prebuilt reversed entry
  FloerComplex rev = complex_from_json(load_json_file(path_of("r.json")));
  CHECK(rev == build("poincare_reversed").complex);

  CliResult h = run({"invariants", path_of("r.json")});
  CHECK(contains(h.out, "h = -1"));
  CHECK(contains(h.out, "chi = -2"));
}

TEST_CASE("periodicity is a diagnostic and always exits zero") {
  run({"corpus", "emit", "poincare", "-o", path_of("p.json")});
  CliResult good = run({"periodicity", path_of("p.json")});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "geometric profile: yes"));
  CHECK(contains(good.out, "u partial at degrees: 4"));

  // a lone degree 1 generator breaks 4-periodicity but is still a report
  std::string odd = file_with("odd.json", R"({
    "flavor": "homology_sphere",
    "generators": [{"id": "w", "degree": 1}],
    "d": [], "v": [], "delta": {}, "delta_prime": {}
  })");
  CliResult bad = run({"periodicity", odd});
  CHECK(bad.code == 0);
  CHECK(contains(bad.out, "dims 4-periodic: no"));
  CHECK(contains(bad.out, "geometric profile: no"));

  CliResult json = run({"periodicity", odd, "--format", "json"});
  Json parsed = parse_json_text(json.out);
  CHECK(parsed["geometric_profile"] == false);
  CHECK(parsed["dims_periodic"] == false);

  // the flavor without functionals has no periodicity statement
  run({"corpus", "emit", "torus_model", "-o", path_of("torus.json")});
  CHECK(run({"periodicity", path_of("torus.json")}).code == 2);
}

TEST_CASE("lattice commands work from a gram matrix file") {
  std::string e8 = path_of("e8.json");
  write_text_file(e8, lattice_to_json(Lattice::e8(-1)).dump(2) + "\n");

  CliResult sv = run({"lattice", "shortvec", e8, "--square=-2"});
  CHECK(sv.code == 0);
  CHECK(contains(sv.out, "pairs with z^2 = -2: 120"));

  CliResult svj =
      run({"lattice", "shortvec", e8, "--square=-2", "--format", "json"});
  Json parsed = parse_json_text(svj.out);
  CHECK(parsed["count"] == 120);
  CHECK(parsed["pairs"].size() == 120);

  // every root is extremal in its coset and eta of the coset is 1
  Json first = parsed["pairs"][0];
  std::string w;
  for (std::size_t i = 0; i < 8; ++i)
    w += (i ? "," : "") + first[i].dump();
  CliResult eta = run({"lattice", "eta", e8, "--w", w});
  CHECK(eta.code == 0);
  CHECK(contains(eta.out, "eta = 1"));
  CHECK(!contains(eta.out, "warning"));

  CliResult ext = run({"lattice", "extremal", e8, "--w", w});
  CHECK(ext.code == 0);
  CHECK(contains(ext.out, "extremal: yes"));

  CliResult diag = run({"lattice", "diagonal", e8});
  CHECK(diag.code == 0);
  CHECK(contains(diag.out, "diagonal: no"));

  CliResult cert = run({"lattice", "certificate", e8, "--format", "json"});
  CHECK(cert.code == 0);
  Json cj = parse_json_text(cert.out);
  CHECK(cj["diagonal"] == false);
  CHECK(cj["eta"] == 1);

  // diagonal lattices are recognized and yield no certificate
  std::string d3 = path_of("d3.json");
  write_text_file(d3, lattice_to_json(Lattice::diagonal(3, -1)).dump(2) + "\n");
  CHECK(contains(run({"lattice", "diagonal", d3}).out, "diagonal: yes"));
  CHECK(contains(run({"lattice", "certificate", d3}).out, "diagonal"));

  // no reducibles on e8 for the trivial class below the first level
  CliResult red =
      run({"lattice", "reducibles", e8, "--c", "0,0,0,0,0,0,0,0", "--k=-1"});
  CHECK(red.code == 0);
  CHECK(contains(red.out, "reducible pairs: 0"));

  // coordinate count must match the rank
  CHECK(run({"lattice", "eta", e8, "--w", "1,0"}).code == 2);
  CHECK(run({"lattice", "eta", e8, "--w", "1,0,0,0,0,0,x,0"}).code == 2);
  // a weighted count needs its weight vector
  CHECK(run({"lattice", "eta", e8, "--w", w, "--m", "2"}).code == 2);
  // a positive lattice simply has no vectors of negative square
  std::string pos = path_of("pos.json");
  write_text_file(pos, lattice_to_json(Lattice::diagonal(2, 1)).dump(2) + "\n");
  CliResult none = run({"lattice", "shortvec", pos, "--square=-2"});
  CHECK(none.code == 0);
  CHECK(contains(none.out, "pairs with z^2 = -2: 0"));
}

TEST_CASE("cobordism commands verify the identity data and reject breakage") {
  static const char* kIdentity = R"({
    "source": {
      "flavor": "homology_sphere",
      "generators": [{"id": "beta", "degree": 0}, {"id": "alpha", "degree": 4}],
      "d": [],
      "v": [{"from": "beta", "to": "alpha", "coeff": 8}],
      "delta": {"alpha": 1},
      "delta_prime": {}
    },
    "target": {
      "flavor": "homology_sphere",
      "generators": [{"id": "b2", "degree": 0}, {"id": "a2", "degree": 4}],
      "d": [],
      "v": [{"from": "b2", "to": "a2", "coeff": 8}],
      "delta": {"a2": 1},
      "delta_prime": {}
    },
    "Wstar": [{"from": "beta", "to": "b2", "coeff": 1},
              {"from": "alpha", "to": "a2", "coeff": 1}],
    "delta_W": {},
    "delta_prime_W": {},
    "flags": {"negative_definite": true, "h1_trivial": true}
  })";
  std::string id = file_with("idcob.json", kIdentity);

  CliResult val = run({"cobordism", "validate", id});
  CHECK(val.code == 0);
  CHECK(contains(val.out, "chain map identity: yes"));

  CliResult hom = run({"cobordism", "homotopy", id, "--ring", "Q"});
  CHECK(hom.code == 0);
  CHECK(contains(hom.out, "homotopy found over Q"));

  CliResult ind =
      run({"cobordism", "induced", id, "--ring", "F3", "--format", "json"});
  CHECK(ind.code == 0);
  CHECK(parse_json_text(ind.out)["u_commutes"] == true);

  CliResult mono = run({"cobordism", "monotone", id});
  CHECK(mono.code == 0);
  CHECK(contains(mono.out, "h(source) = 1"));
  CHECK(contains(mono.out, "h(target) = 1"));
  CHECK(contains(mono.out, "consistent: yes"));

  // doubling one wstar coefficient breaks the delta identity: exit 1
  std::string broken(kIdentity);
  std::size_t at = broken.find("\"to\": \"a2\", \"coeff\": 1}],\n    \"delta_W\"");
  REQUIRE(at != std::string::npos);
  broken.replace(at, 25, "\"to\": \"a2\", \"coeff\": 2}],");
  std::string bad = file_with("badcob.json", broken);
  CliResult bval = run({"cobordism", "validate", bad});
  CHECK(bval.code == 1);
  CHECK(contains(bval.out, "delta functional identity: no"));
  CliResult bj = run({"cobordism", "validate", bad, "--format", "json"});
  CHECK(bj.code == 1);
  CHECK(parse_json_text(bj.out)["ok"] == false);

  // a generator name that is not in the stated complex: exit 2
  std::string ghost(kIdentity);
  at = ghost.find("\"from\": \"beta\", \"to\": \"b2\"");
  REQUIRE(at != std::string::npos);
  ghost.replace(at, 14, "\"from\": \"nope\"");
  CHECK(run({"cobordism", "validate", file_with("ghost.json", ghost)}).code ==
        2);
}

TEST_CASE("triangle check reads the three periodic maps and localizes") {
  static const char* kIso = R"({
    "shifts": [0, 0, 5],
    "vertices": [{"dims": [1,0,0,0,0,0,0,0]},
                 {"dims": [1,0,0,0,0,0,0,0]},
                 {"dims": [0,0,0,0,0,0,0,0]}],
    "maps": [
      {"matrices": [[[1]], [], [], [], [], [], [], []]},
      {"matrices": [[], [], [], [], [], [], [], []]},
      {"matrices": [[], [], [], [[]], [], [], [], []]}
    ]
  })";
  std::string iso = file_with("iso.json", kIso);
  CliResult ok = run({"triangle", "check", iso});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "exact triangle: yes"));

  CliResult okj = run({"triangle", "check", iso, "--ring", "F7", "--format",
                       "json"});
  CHECK(okj.code == 0);
  CHECK(parse_json_text(okj.out)["all_exact"] == true);

  // zeroing the isomorphism breaks exactness at two vertices: exit 1
  std::string dead(kIso);
  std::size_t at = dead.find("[[[1]]");
  REQUIRE(at != std::string::npos);
  dead.replace(at, 6, "[[[0]]");
  CliResult bad = run({"triangle", "check", file_with("dead.json", dead)});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "exact triangle: no"));
  CHECK(contains(bad.out, "degree 0 fails"));

  // a shift sum away from the periodic one is rejected before shapes
  std::string shifted(kIso);
  at = shifted.find("[0, 0, 5]");
  REQUIRE(at != std::string::npos);
  shifted.replace(at, 9, "[0, 0, 4]");
  CliResult sh = run({"triangle", "check", file_with("shift.json", shifted)});
  CHECK(sh.code == 1);  // a mathematical precondition, not a parse problem

  // ring Z is meaningless here
  CHECK(run({"triangle", "check", iso, "--ring", "Z"}).code == 2);
}
