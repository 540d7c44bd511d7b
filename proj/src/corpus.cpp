#include "floercalc/corpus.hpp"

#include <random>

namespace floercalc {

namespace {

std::size_t mod8(std::size_t q) { return q % 8; }

FloerComplex sized(Flavor flavor,
                   std::array<std::vector<std::string>, 8> gens) {
  FloerComplex c;
  c.flavor = flavor;
  c.gens = std::move(gens);
  for (std::size_t q = 0; q < 8; ++q) {
    c.d[q] = IntMatrix(c.dim(q + 1), c.dim(q));
    c.v[q] = IntMatrix(c.dim(q + 4), c.dim(q));
  }
  if (flavor == Flavor::homology_sphere) {
    c.delta = IntMatrix(1, c.dim(4));
    c.delta_prime.assign(c.dim(1), Int(0));
  } else {
    c.delta = IntMatrix(0, 0);
  }
  return c;
}

Int signed_dim_sum(const std::array<std::size_t, 8>& dims) {
  Int s = 0;
  for (std::size_t q = 0; q < 8; ++q)
    s += (q % 2 == 0) ? Int(dims[q]) : -Int(dims[q]);
  return s;
}

CorpusEntry s3_entry() {
  CorpusEntry e;
  e.name = "s3";
  e.complex = FloerComplex::empty(Flavor::homology_sphere);
  e.expected.h = 0;
  e.expected.u_note = "the group is zero, u along with it";
  return e;
}

CorpusEntry poincare_entry() {
  CorpusEntry e;
  e.name = "poincare";
  FloerComplex c = sized(Flavor::homology_sphere,
                         {{{"beta"}, {}, {}, {}, {"alpha"}, {}, {}, {}}});
  c.v[0](0, 0) = 8;
  c.delta(0, 0) = 1;
  e.complex = c;
  e.expected.hf_dims = {1, 0, 0, 0, 1, 0, 0, 0};
  e.expected.chi = 2;
  e.expected.h = 1;
  e.expected.u_note = "u is multiplication by 8 from degree 0 to degree 4";
  return e;
}

CorpusEntry poincare_reversed_entry() {
  CorpusEntry e;
  e.name = "poincare_reversed";
  e.complex = reverse_orientation(poincare_entry().complex);
  e.expected.hf_dims = {0, 1, 0, 0, 0, 1, 0, 0};
  e.expected.chi = -2;
  e.expected.h = -1;
  e.expected.u_note = "u is multiplication by -8 from degree 5 to degree 1";
  return e;
}

CorpusEntry acyclic_entry() {
  CorpusEntry e;
  e.name = "acyclic_block";
  FloerComplex c = sized(Flavor::homology_sphere,
                         {{{}, {}, {"x"}, {"y"}, {}, {}, {}, {}}});
  c.d[2](0, 0) = 1;
  e.complex = c;
  e.expected.h = 0;
  e.expected.u_note = "u is zero";
  return e;
}

CorpusEntry torsion_entry() {
  CorpusEntry e;
  e.name = "torsion_block";
  FloerComplex c = sized(Flavor::homology_sphere,
                         {{{}, {}, {"x"}, {"y"}, {}, {}, {}, {}}});
  // dx = 2y: acyclic over every odd-characteristic field, a two-torsion
  // class in degree 3 over the integers
  c.d[2](0, 0) = 2;
  e.complex = c;
  e.expected.h = 0;
  e.expected.u_note = "u is zero";
  return e;
}

CorpusEntry torus_entry() {
  CorpusEntry e;
  e.name = "torus_model";
  FloerComplex c = sized(Flavor::admissible,
                         {{{}, {}, {"a"}, {}, {}, {}, {"b"}, {}}});
  c.v[2](0, 0) = 8;
  c.v[6](0, 0) = 8;
  e.complex = c;
  e.expected.hf_dims = {0, 0, 1, 0, 0, 0, 1, 0};
  e.expected.reduced_dims = e.expected.hf_dims;
  e.expected.chi = 2;
  e.expected.nilpotency = 1;
  e.expected.u_note =
      "u swaps the two generators with factor 8, so u^2 = 64 exactly";
  return e;
}

CorpusEntry jordan_entry() {
  CorpusEntry e;
  e.name = "jordan_block";
  FloerComplex c =
      sized(Flavor::admissible,
            {{{"j1", "j2"}, {}, {}, {}, {"k1", "k2"}, {}, {}, {}}});
  c.v[0](0, 0) = 8;
  c.v[0](0, 1) = 1;
  c.v[0](1, 1) = 8;
  c.v[4](0, 0) = 8;
  c.v[4](1, 1) = 8;
  e.complex = c;
  e.expected.hf_dims = {2, 0, 0, 0, 2, 0, 0, 0};
  e.expected.reduced_dims = e.expected.hf_dims;
  e.expected.chi = 4;
  e.expected.nilpotency = 2;
  e.expected.u_note =
      "u^2 - 64 is a nonzero square-zero correction on degree 0";
  return e;
}

// integer unimodular change of basis in every degree, seeded
void conjugate_in_place(FloerComplex& c, std::mt19937_64& rng) {
  std::array<IntMatrix, 8> t, tinv;
  std::uniform_int_distribution<int> amt(-2, 2);
  for (std::size_t q = 0; q < 8; ++q) {
    std::size_t n = c.dim(q);
    t[q] = IntMatrix::identity(n);
    tinv[q] = IntMatrix::identity(n);
    if (n < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t o = 0; o < 3 * n; ++o) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      Int a = amt(rng);
      // T' = E T, so Tinv' = Tinv E^{-1}
      for (std::size_t k = 0; k < n; ++k) t[q](i, k) += a * t[q](j, k);
      for (std::size_t k = 0; k < n; ++k) tinv[q](k, j) -= a * tinv[q](k, i);
    }
  }
  FloerComplex r = c;
  for (std::size_t q = 0; q < 8; ++q) {
    r.d[q] = t[mod8(q + 1)] * c.d[q] * tinv[q];
    r.v[q] = t[mod8(q + 4)] * c.v[q] * tinv[q];
  }
  if (c.flavor == Flavor::homology_sphere) {
    r.delta = c.delta * tinv[4];
    r.delta_prime = t[1] * c.delta_prime;
  }
  c = std::move(r);
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "s3",            "poincare",    "poincare_reversed", "acyclic_block",
      "torsion_block", "torus_model", "jordan_block"};
  return names;
}

CorpusEntry build(const std::string& name) {
  CorpusEntry e;
  if (name == "s3")
    e = s3_entry();
  else if (name == "poincare")
    e = poincare_entry();
  else if (name == "poincare_reversed")
    e = poincare_reversed_entry();
  else if (name == "acyclic_block")
    e = acyclic_entry();
  else if (name == "torsion_block")
    e = torsion_entry();
  else if (name == "torus_model")
    e = torus_entry();
  else if (name == "jordan_block")
    e = jordan_entry();
  else
    throw parse_error("unknown corpus entry: " + name);
  validate_complex(e.complex);
  return e;
}

CorpusEntry random_valid(std::uint64_t seed, const RandomProfile& p) {
  std::size_t total =
      2 * (p.poincare + p.acyclic + p.torsion + p.u_pairs);
  if (total > 64)
    throw parse_error("profile asks for more than 64 generators");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> deg(0, 7);

  // the h-chain: beta_i in degree 0, alpha_i in degree 4, v(beta_i) =
  // 8 alpha_i, v(alpha_i) = 8 beta_{i+1}, delta(alpha_i) = 1
  std::array<std::vector<std::string>, 8> names{};
  for (std::size_t i = 0; i < p.poincare; ++i) {
    names[0].push_back("p" + std::to_string(i + 1) + "b");
    names[4].push_back("p" + std::to_string(i + 1) + "a");
  }
  FloerComplex c = sized(Flavor::homology_sphere, names);
  for (std::size_t i = 0; i < p.poincare; ++i) {
    c.v[0](i, i) = 8;
    c.delta(0, i) = 1;
    if (i + 1 < p.poincare) c.v[4](i + 1, i) = 8;
  }

  ExpectedInvariants ex;
  ex.hf_dims[0] += p.poincare;
  ex.hf_dims[4] += p.poincare;

  for (std::size_t i = 0; i < p.u_pairs; ++i) {
    std::size_t k = deg(rng);
    std::array<std::vector<std::string>, 8> g{};
    g[k].push_back("u" + std::to_string(i + 1) + "x");
    g[mod8(k + 4)].push_back("u" + std::to_string(i + 1) + "y");
    FloerComplex b = sized(Flavor::homology_sphere, g);
    b.v[k](0, 0) = 8;
    b.v[mod8(k + 4)](0, 0) = 8;
    c = direct_sum(c, b);
    ex.hf_dims[k] += 1;
    ex.hf_dims[mod8(k + 4)] += 1;
    ex.reduced_dims[k] += 1;
    ex.reduced_dims[mod8(k + 4)] += 1;
  }

  auto add_killed_pair = [&](const std::string& prefix, std::size_t i,
                             Int step) {
    std::size_t k = deg(rng);
    std::array<std::vector<std::string>, 8> g{};
    g[k].push_back(prefix + std::to_string(i + 1) + "x");
    g[mod8(k + 1)].push_back(prefix + std::to_string(i + 1) + "y");
    FloerComplex b = sized(Flavor::homology_sphere, g);
    b.d[k](0, 0) = step;
    c = direct_sum(c, b);
  };
  for (std::size_t i = 0; i < p.acyclic; ++i) add_killed_pair("a", i, 1);
  for (std::size_t i = 0; i < p.torsion; ++i) add_killed_pair("t", i, 2);

  Int h = Int(p.poincare);
  if (p.reversed) {
    c = reverse_orientation(c);
    h = -h;
    std::array<std::size_t, 8> hd{}, rd{};
    for (std::size_t q = 0; q < 8; ++q) {
      hd[mod8(13 - q)] = ex.hf_dims[q];
      rd[mod8(13 - q)] = ex.reduced_dims[q];
    }
    ex.hf_dims = hd;
    ex.reduced_dims = rd;
  }

  conjugate_in_place(c, rng);

  ex.chi = signed_dim_sum(ex.hf_dims);
  ex.h = h;
  ex.nilpotency = p.u_pairs > 0 ? 1 : 0;
  ex.u_note = "a chain of " + std::to_string(p.poincare) +
              " linked blocks and " + std::to_string(p.u_pairs) +
              " u^2 = 64 pairs" + (p.reversed ? ", mirrored" : "");

  CorpusEntry e;
  e.name = "random-" + std::to_string(seed);
  e.complex = std::move(c);
  e.expected = std::move(ex);
  validate_complex(e.complex);
  return e;
}

}  // namespace floercalc
