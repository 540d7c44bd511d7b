#include "floercalc/cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "floercalc/corpus.hpp"
#include "floercalc/io.hpp"

namespace floercalc {

namespace {

std::size_t mod8(std::size_t q) { return q % 8; }

// ---------------------------------------------------------------------------
// rendering helpers
// ---------------------------------------------------------------------------

std::string join_dims(const std::array<std::size_t, 8>& d) {
  std::ostringstream s;
  for (std::size_t q = 0; q < 8; ++q) s << (q ? " " : "") << d[q];
  return s.str();
}

Json dims_json(const std::array<std::size_t, 8>& d) {
  Json a = Json::array();
  for (std::size_t q = 0; q < 8; ++q) a.push_back(d[q]);
  return a;
}

std::string join_vec(const IntVec& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s << (i ? ", " : "") << v[i].str();
  s << ")";
  return s.str();
}

Json vec_json(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

Json rat_matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(rat_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_rat_matrix(std::ostream& out, const RatMatrix& m,
                      const std::string& indent) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << (j ? ", " : "") << rat_to_string(m(i, j));
    out << "]\n";
  }
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// flag plumbing
// ---------------------------------------------------------------------------

struct Opts {
  std::string file;
  std::string out_path;
  std::string ring = "Q";
  std::string format = "text";
  std::string w, a, c, square, k, name;
  long long m = 0;
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Opts& o) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
}

void add_ring(CLI::App* cmd, Opts& o, const char* help) {
  cmd->add_option("--ring", o.ring, help);
}

RingSpec field_ring(const Opts& o) {
  RingSpec r = RingSpec::parse(o.ring);
  if (!r.is_field())
    throw parse_error("this command needs field coefficients (Q or Fp)");
  return r;
}

IntVec parse_coords(const std::string& s, std::size_t rank,
                    const std::string& what) {
  IntVec v;
  std::stringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    std::size_t b = piece.find_first_not_of(" \t");
    std::size_t e = piece.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw parse_error(what + ": empty coordinate");
    try {
      v.push_back(Int(piece.substr(b, e - b + 1)));
    } catch (const std::exception&) {
      throw parse_error(what + ": '" + piece + "' is not an integer");
    }
  }
  if (v.size() != rank)
    throw parse_error(what + " needs " + std::to_string(rank) +
                      " comma-separated coordinates, got " +
                      std::to_string(v.size()));
  return v;
}

Int parse_int_flag(const std::string& s, const std::string& what) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw parse_error(what + ": '" + s + "' is not an integer");
  }
}

FloerComplex load_complex(const std::string& path) {
  FloerComplex c = complex_from_json(load_json_file(path));
  validate_complex(c);
  return c;
}

// ---------------------------------------------------------------------------
// complex commands
// ---------------------------------------------------------------------------

int cmd_validate(const Opts& o, std::ostream& out) {
  FloerComplex c = complex_from_json(load_json_file(o.file));
  bool ok = true;
  std::string why;
  try {
    validate_complex(c);
  } catch (const math_error& e) {
    ok = false;
    why = e.what();
  }
  if (o.json()) {
    Json j{{"command", "validate"}, {"ok", ok}};
    if (!ok) j["error"] = why;
    j["generators"] = c.total_dim();
    emit(out, j);
  } else if (ok) {
    out << "ok: all identities hold (" << c.total_dim() << " generators)\n";
  } else {
    out << "invalid: " << why << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_cohomology(const Opts& o, std::ostream& out) {
  RingSpec ring = RingSpec::parse(o.ring);
  FloerComplex c = load_complex(o.file);
  if (!ring.is_field()) {
    IntegralCohomology h = integral_cohomology(c);
    if (o.json()) {
      Json tors = Json::array();
      for (std::size_t q = 0; q < 8; ++q) {
        Json t = Json::array();
        for (const Int& x : h.torsion[q]) t.push_back(int_to_json(x));
        tors.push_back(std::move(t));
      }
      emit(out, Json{{"command", "cohomology"},
                     {"ring", "Z"},
                     {"free_rank", dims_json(h.free_rank)},
                     {"torsion", std::move(tors)}});
    } else {
      for (std::size_t q = 0; q < 8; ++q) {
        out << "HF^" << q << ": ";
        bool any = false;
        if (h.free_rank[q] > 0) {
          out << "Z";
          if (h.free_rank[q] > 1) out << "^" << h.free_rank[q];
          any = true;
        }
        for (const Int& t : h.torsion[q]) {
          out << (any ? " + " : "") << "Z/" << t.str();
          any = true;
        }
        if (!any) out << "0";
        out << "\n";
      }
    }
    return 0;
  }
  FieldCohomology h = field_cohomology(c, ring);
  if (o.json()) {
    emit(out, Json{{"command", "cohomology"},
                   {"ring", ring.name()},
                   {"dims", dims_json(h.dims())}});
  } else {
    out << "ring: " << ring.name() << "\n";
    out << "HF dims: " << join_dims(h.dims()) << "\n";
  }
  return 0;
}

int cmd_invariants(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  FloerComplex c = load_complex(o.file);
  EulerReport eu = euler_and_casson(c, ring);
  ReducedGroup rg = reduced_group(c, ring);
  NilpotencyReport nil = nilpotency_index(c, ring);
  std::optional<HReport> hr;
  if (c.flavor == Flavor::homology_sphere) hr = h_invariant(c, ring);

  if (o.json()) {
    Json j{{"command", "invariants"}, {"ring", ring.name()}};
    j["hf_dims"] = dims_json(eu.dims);
    j["chi"] = int_to_json(eu.chi);
    j["lambda"] = rat_to_string(eu.casson);
    if (hr) {
      j["h"] = int_to_json(hr->h);
      j["h_span"] = int_to_json(hr->h_span);
      j["h_prefix"] = int_to_json(hr->h_prefix);
      j["tower_spans"] = Json{{"delta_even", rg.s_even},
                              {"delta_odd", rg.s_odd},
                              {"delta_prime_even", rg.t_even},
                              {"delta_prime_odd", rg.t_odd}};
    }
    j["reduced_dims"] = dims_json(rg.dims);
    j["nilpotent"] = nil.nilpotent;
    if (nil.nilpotent) j["nilpotency_index"] = nil.index;
    emit(out, j);
    return 0;
  }
  out << "ring: " << ring.name() << "\n";
  out << "HF dims: " << join_dims(eu.dims) << "\n";
  out << "chi = " << eu.chi.str() << "\n";
  out << "lambda = " << rat_to_string(eu.casson) << "\n";
  if (hr) {
    out << "h = " << hr->h.str() << " (span " << hr->h_span.str()
        << ", prefix " << hr->h_prefix.str() << ")\n";
    out << "delta tower spans: even " << rg.s_even << ", odd " << rg.s_odd
        << "\n";
    out << "delta' tower spans: even " << rg.t_even << ", odd " << rg.t_odd
        << "\n";
  }
  out << "reduced dims: " << join_dims(rg.dims) << "\n";
  if (nil.nilpotent)
    out << "nilpotency index = " << nil.index << "\n";
  else
    out << "u^2 - 64 is not nilpotent\n";
  return 0;
}

int cmd_reduced(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  FloerComplex c = load_complex(o.file);
  ReducedGroup rg = reduced_group(c, ring);
  if (o.json()) {
    Json u = Json::array();
    for (std::size_t q = 0; q < 8; ++q) u.push_back(rat_matrix_json(rg.u[q]));
    emit(out, Json{{"command", "reduced"},
                   {"ring", ring.name()},
                   {"dims", dims_json(rg.dims)},
                   {"u", std::move(u)}});
    return 0;
  }
  out << "ring: " << ring.name() << "\n";
  out << "reduced dims: " << join_dims(rg.dims) << "\n";
  for (std::size_t q = 0; q < 8; ++q) {
    if (rg.dims[q] == 0) continue;
    out << "u: " << q << " -> " << mod8(q + 4) << "\n";
    print_rat_matrix(out, rg.u[q], "  ");
  }
  return 0;
}

int cmd_reverse(const Opts& o, std::ostream& out) {
  FloerComplex c = load_complex(o.file);
  FloerComplex r = reverse_orientation(c);
  validate_complex(r);
  write_text_file(o.out_path, complex_to_json(r).dump(2) + "\n");
  if (o.json())
    emit(out, Json{{"command", "reverse"}, {"wrote", o.out_path}});
  else
    out << "wrote " << o.out_path << "\n";
  return 0;
}

int cmd_periodicity(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  FloerComplex c = load_complex(o.file);
  PeriodicityReport p = periodicity_report(c, ring);
  if (o.json()) {
    Json iso = Json::array(), partial = Json::array();
    for (std::size_t q = 0; q < 8; ++q) {
      iso.push_back(p.u_iso[q]);
      partial.push_back(p.u_partial[q]);
    }
    emit(out, Json{{"command", "periodicity"},
                   {"ring", ring.name()},
                   {"hf_dims", dims_json(p.hf_dims)},
                   {"reduced_dims", dims_json(p.reduced_dims)},
                   {"u_iso", std::move(iso)},
                   {"u_partial", std::move(partial)},
                   {"dims_periodic", p.dims_periodic},
                   {"reduced_periodic", p.reduced_periodic},
                   {"geometric_profile", p.geometric_profile()}});
    return 0;
  }
  out << "ring: " << ring.name() << "\n";
  out << "HF dims: " << join_dims(p.hf_dims) << "\n";
  out << "reduced dims: " << join_dims(p.reduced_dims) << "\n";
  out << "u iso at degrees:";
  for (std::size_t q = 0; q < 8; ++q)
    if (p.u_iso[q]) out << " " << q;
  out << "\n";
  out << "u partial at degrees:";
  for (std::size_t q = 0; q < 8; ++q)
    if (p.u_partial[q]) out << " " << q;
  out << "\n";
  out << "dims 4-periodic: " << yesno(p.dims_periodic) << "\n";
  out << "reduced 4-periodic: " << yesno(p.reduced_periodic) << "\n";
  out << "geometric profile: " << yesno(p.geometric_profile()) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// lattice commands
// ---------------------------------------------------------------------------

Json pairs_json(const VectorPairSet& vp) {
  Json a = Json::array();
  for (const IntVec& z : vp.reps) a.push_back(vec_json(z));
  return a;
}

int cmd_lattice_eta(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  IntVec w = parse_coords(o.w, L.rank(), "--w");
  Int m(o.m);
  IntVec a(L.rank(), Int(0));
  if (!o.a.empty())
    a = parse_coords(o.a, L.rank(), "--a");
  else if (m > 0)
    throw parse_error("eta with m > 0 needs --a");
  Int value = eta(L, w, a, m);
  bool extremal = is_extremal(L, w);
  if (o.json()) {
    emit(out, Json{{"command", "lattice eta"},
                   {"eta", int_to_json(value)},
                   {"m", o.m},
                   {"w_square", int_to_json(L.square(w))},
                   {"w_extremal", extremal}});
  } else {
    out << "eta = " << value.str() << "\n";
    if (!extremal) out << "warning: w is not extremal\n";
  }
  return 0;
}

int cmd_lattice_extremal(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  IntVec w = parse_coords(o.w, L.rank(), "--w");
  MinSquare ms = min_square_in_coset(L, w);
  bool ext = is_extremal(L, w);
  if (o.json()) {
    emit(out, Json{{"command", "lattice extremal"},
                   {"extremal", ext},
                   {"w_square", int_to_json(L.square(w))},
                   {"coset_min", int_to_json(ms.value)},
                   {"witness", vec_json(ms.witness)}});
  } else {
    out << "extremal: " << yesno(ext) << "\n";
    out << "w^2 = " << L.square(w).str() << "\n";
    out << "coset minimum |z^2| = " << ms.value.str() << " at "
        << join_vec(ms.witness) << "\n";
  }
  return 0;
}

int cmd_lattice_shortvec(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  Int s = parse_int_flag(o.square, "--square");
  std::optional<IntVec> coset;
  if (!o.w.empty()) coset = parse_coords(o.w, L.rank(), "--w");
  VectorPairSet vp = vectors_with_square(L, s, coset);
  if (o.json()) {
    emit(out, Json{{"command", "lattice shortvec"},
                   {"square", int_to_json(s)},
                   {"count", vp.size()},
                   {"pairs", pairs_json(vp)}});
  } else {
    out << "pairs with z^2 = " << s.str() << ": " << vp.size() << "\n";
    for (const IntVec& z : vp.reps) out << "  " << join_vec(z) << "\n";
  }
  return 0;
}

int cmd_lattice_reducibles(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  IntVec c = parse_coords(o.c, L.rank(), "--c");
  Int k = parse_int_flag(o.k, "--k");
  ReducibleCount rc = count_reducibles(L, c, k);
  if (o.json()) {
    emit(out, Json{{"command", "lattice reducibles"},
                   {"target_square", int_to_json(rc.target_square)},
                   {"count", rc.pairs.size()},
                   {"pairs", pairs_json(rc.pairs)}});
  } else {
    out << "target square c^2 - 4k = " << rc.target_square.str() << "\n";
    out << "reducible pairs: " << rc.pairs.size() << "\n";
    for (const IntVec& z : rc.pairs.reps) out << "  " << join_vec(z) << "\n";
  }
  return 0;
}

int cmd_lattice_diagonal(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  bool diag = is_standard_diagonal(L);
  if (o.json())
    emit(out, Json{{"command", "lattice diagonal"}, {"diagonal", diag}});
  else
    out << "diagonal: " << yesno(diag) << "\n";
  return 0;
}

int cmd_lattice_certificate(const Opts& o, std::ostream& out) {
  Lattice L = lattice_from_json(load_json_file(o.file));
  DiagonalityCertificate c = nondiagonal_certificate(L);
  if (o.json()) {
    Json j{{"command", "lattice certificate"}, {"diagonal", c.diagonal}};
    if (!c.diagonal) {
      j["w"] = vec_json(c.w);
      j["w_square"] = int_to_json(c.w_square);
      j["a"] = vec_json(c.a);
      j["m"] = int_to_json(c.m);
      j["eta"] = int_to_json(c.eta_value);
      j["perp_rank"] = c.perp_rank;
    }
    emit(out, j);
    return 0;
  }
  if (c.diagonal) {
    out << "diagonal\n";
  } else {
    out << "not diagonal; certificate:\n";
    out << "  w = " << join_vec(c.w) << " with w^2 = " << c.w_square.str()
        << "\n";
    out << "  a = " << join_vec(c.a) << ", m = " << c.m.str() << "\n";
    out << "  eta = " << c.eta_value.str() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// cobordism commands
// ---------------------------------------------------------------------------

int cmd_cob_validate(const Opts& o, std::ostream& out) {
  CobordismData w = cobordism_from_json(load_json_file(o.file));
  CobordismReport r = validate_cobordism(w);
  if (o.json()) {
    Json fails = Json::array();
    for (const std::string& f : r.failures) fails.push_back(f);
    emit(out, Json{{"command", "cobordism validate"},
                   {"chain_map", r.chain_map},
                   {"delta_functorial", r.delta_functorial},
                   {"delta_prime_dual", r.delta_prime_dual},
                   {"phi_consistent", r.phi_consistent},
                   {"ok", r.ok()},
                   {"failures", std::move(fails)}});
  } else {
    out << "chain map identity: " << yesno(r.chain_map) << "\n";
    out << "delta functional identity: " << yesno(r.delta_functorial) << "\n";
    out << "delta' element identity: " << yesno(r.delta_prime_dual) << "\n";
    out << "stored homotopy consistent: " << yesno(r.phi_consistent) << "\n";
    for (const std::string& f : r.failures) out << "  " << f << "\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_cob_homotopy(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  CobordismData w = cobordism_from_json(load_json_file(o.file));
  HomotopySolution s = solve_homotopy(w, ring);
  if (o.json()) {
    Json phi = Json::array();
    for (std::size_t q = 0; q < 8; ++q)
      phi.push_back(rat_matrix_json(s.phi[q]));
    emit(out, Json{{"command", "cobordism homotopy"},
                   {"ring", ring.name()},
                   {"found", s.found},
                   {"phi", std::move(phi)}});
  } else if (s.found) {
    out << "homotopy found over " << ring.name() << "\n";
    for (std::size_t q = 0; q < 8; ++q) {
      if (s.phi[q].rows() == 0 || s.phi[q].cols() == 0 ||
          s.phi[q].is_zero())
        continue;
      out << "phi: " << q << " -> " << mod8(q + 3) << "\n";
      print_rat_matrix(out, s.phi[q], "  ");
    }
  } else {
    out << "no homotopy over " << ring.name() << "\n";
  }
  return s.found ? 0 : 1;
}

int cmd_cob_induced(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  CobordismData w = cobordism_from_json(load_json_file(o.file));
  InducedReducedMap r = induced_reduced_map(w, ring);
  if (o.json()) {
    Json m = Json::array();
    for (std::size_t q = 0; q < 8; ++q)
      m.push_back(rat_matrix_json(r.matrix[q]));
    emit(out, Json{{"command", "cobordism induced"},
                   {"ring", ring.name()},
                   {"source_dims", dims_json(r.source_dims)},
                   {"target_dims", dims_json(r.target_dims)},
                   {"matrix", std::move(m)},
                   {"u_commutes", r.u_commutes}});
  } else {
    out << "ring: " << ring.name() << "\n";
    out << "reduced source dims: " << join_dims(r.source_dims) << "\n";
    out << "reduced target dims: " << join_dims(r.target_dims) << "\n";
    for (std::size_t q = 0; q < 8; ++q) {
      if (r.matrix[q].rows() == 0 && r.matrix[q].cols() == 0) continue;
      out << "induced map at degree " << q << "\n";
      print_rat_matrix(out, r.matrix[q], "  ");
    }
    out << "commutes with u: " << yesno(r.u_commutes) << "\n";
  }
  return r.u_commutes ? 0 : 1;
}

int cmd_cob_monotone(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  CobordismData w = cobordism_from_json(load_json_file(o.file));
  MonotonicityReport r = h_monotonicity_report(w, ring);
  if (o.json()) {
    emit(out, Json{{"command", "cobordism monotone"},
                   {"ring", ring.name()},
                   {"h_source", int_to_json(r.h_source)},
                   {"h_target", int_to_json(r.h_target)},
                   {"applicable", r.applicable},
                   {"monotone", r.monotone},
                   {"consistent", r.consistent}});
  } else {
    out << "h(source) = " << r.h_source.str() << "\n";
    out << "h(target) = " << r.h_target.str() << "\n";
    out << "flags applicable: " << yesno(r.applicable) << "\n";
    out << "h(target) >= h(source): " << yesno(r.monotone) << "\n";
    out << "consistent: " << yesno(r.consistent) << "\n";
  }
  return r.consistent ? 0 : 1;
}

// ---------------------------------------------------------------------------
// triangle and corpus commands
// ---------------------------------------------------------------------------

int cmd_triangle_check(const Opts& o, std::ostream& out) {
  RingSpec ring = field_ring(o);
  TrianglePresentation t =
      triangle_from_json(load_json_file(o.file), ring);
  ExactnessReport r = check_exact_triangle(t);
  if (o.json()) {
    Json verts = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      Json ex = Json::array(), ir = Json::array(), kd = Json::array();
      for (std::size_t q = 0; q < 8; ++q) {
        ex.push_back(r.vertex[i].exact[q]);
        ir.push_back(r.vertex[i].image_rank[q]);
        kd.push_back(r.vertex[i].kernel_dim[q]);
      }
      verts.push_back(Json{{"exact", std::move(ex)},
                           {"image_rank", std::move(ir)},
                           {"kernel_dim", std::move(kd)}});
    }
    emit(out, Json{{"command", "triangle check"},
                   {"ring", ring.name()},
                   {"vertices", std::move(verts)},
                   {"all_exact", r.all_exact()}});
  } else {
    out << "ring: " << ring.name() << "\n";
    for (std::size_t i = 0; i < 3; ++i) {
      out << "vertex " << i << ":";
      bool clean = true;
      for (std::size_t q = 0; q < 8; ++q)
        if (!r.vertex[i].exact[q]) {
          out << " degree " << q << " fails (image rank "
              << r.vertex[i].image_rank[q] << ", kernel dim "
              << r.vertex[i].kernel_dim[q] << ")";
          clean = false;
        }
      out << (clean ? " exact at every degree" : "") << "\n";
    }
    out << "exact triangle: " << yesno(r.all_exact()) << "\n";
  }
  return r.all_exact() ? 0 : 1;
}

int cmd_corpus_list(const Opts& o, std::ostream& out) {
  if (o.json()) {
    Json names = Json::array();
    for (const std::string& n : corpus_names()) names.push_back(n);
    emit(out, Json{{"command", "corpus list"}, {"entries", std::move(names)}});
  } else {
    for (const std::string& n : corpus_names()) out << n << "\n";
  }
  return 0;
}

int cmd_corpus_emit(const Opts& o, std::ostream& out) {
  CorpusEntry e = build(o.name);
  std::string text = complex_to_json(e.complex).dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_text_file(o.out_path, text);
    out << "wrote " << o.out_path << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Opts o;
  CLI::App app{"exact instanton cochain calculator"};
  app.require_subcommand(1);
  std::map<const CLI::App*, std::function<int()>> handlers;

  auto leaf = [&](CLI::App* parent, const char* name, const char* help,
                  std::function<int()> fn) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    add_format(cmd, o);
    handlers[cmd] = std::move(fn);
    return cmd;
  };
  auto complex_arg = [&](CLI::App* cmd) {
    cmd->add_option("complex", o.file, "complex file")->required();
  };

  CLI::App* cmd;
  cmd = leaf(&app, "validate", "check all chain identities",
             [&] { return cmd_validate(o, out); });
  complex_arg(cmd);

  cmd = leaf(&app, "cohomology", "cohomology groups",
             [&] { return cmd_cohomology(o, out); });
  complex_arg(cmd);
  add_ring(cmd, o, "Z, Q, or Fp");

  cmd = leaf(&app, "invariants", "h, chi, lambda, towers, nilpotency",
             [&] { return cmd_invariants(o, out); });
  complex_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");

  cmd = leaf(&app, "reduced", "reduced group and its u",
             [&] { return cmd_reduced(o, out); });
  complex_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");

  cmd = leaf(&app, "reverse", "write the orientation reverse",
             [&] { return cmd_reverse(o, out); });
  complex_arg(cmd);
  cmd->add_option("-o,--output", o.out_path, "output file")->required();

  cmd = leaf(&app, "periodicity", "degree-4 periodicity diagnostics",
             [&] { return cmd_periodicity(o, out); });
  complex_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");

  CLI::App* lat = app.add_subcommand("lattice", "definite lattice tools");
  lat->require_subcommand(1);
  auto lattice_arg = [&](CLI::App* c2) {
    c2->add_option("lattice", o.file, "lattice file")->required();
  };
  cmd = leaf(lat, "eta", "signed coset count",
             [&] { return cmd_lattice_eta(o, out); });
  lattice_arg(cmd);
  cmd->add_option("--w", o.w, "coset vector, comma coordinates")->required();
  cmd->add_option("--a", o.a, "dual vector, comma values");
  cmd->add_option("--m", o.m, "exponent")->check(CLI::NonNegativeNumber);

  cmd = leaf(lat, "extremal", "is w minimal in w + 2L",
             [&] { return cmd_lattice_extremal(o, out); });
  lattice_arg(cmd);
  cmd->add_option("--w", o.w, "vector, comma coordinates")->required();

  cmd = leaf(lat, "shortvec", "vectors of a given square",
             [&] { return cmd_lattice_shortvec(o, out); });
  lattice_arg(cmd);
  cmd->add_option("--square", o.square, "target square")->required();
  cmd->add_option("--w", o.w, "optional coset vector");

  cmd = leaf(lat, "reducibles", "reducible classes for (c, k)",
             [&] { return cmd_lattice_reducibles(o, out); });
  lattice_arg(cmd);
  cmd->add_option("--c", o.c, "class vector, comma coordinates")->required();
  cmd->add_option("--k", o.k, "instanton number")->required();

  cmd = leaf(lat, "diagonal", "standard diagonal test",
             [&] { return cmd_lattice_diagonal(o, out); });
  lattice_arg(cmd);

  cmd = leaf(lat, "certificate", "nondiagonality certificate",
             [&] { return cmd_lattice_certificate(o, out); });
  lattice_arg(cmd);

  CLI::App* cob = app.add_subcommand("cobordism", "cobordism map tools");
  cob->require_subcommand(1);
  auto cob_arg = [&](CLI::App* c2) {
    c2->add_option("cobordism", o.file, "cobordism file")->required();
  };
  cmd = leaf(cob, "validate", "chain level identities",
             [&] { return cmd_cob_validate(o, out); });
  cob_arg(cmd);
  cmd = leaf(cob, "homotopy", "solve the commutation homotopy",
             [&] { return cmd_cob_homotopy(o, out); });
  cob_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");
  cmd = leaf(cob, "induced", "map on reduced groups",
             [&] { return cmd_cob_induced(o, out); });
  cob_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");
  cmd = leaf(cob, "monotone", "h at both ends",
             [&] { return cmd_cob_monotone(o, out); });
  cob_arg(cmd);
  add_ring(cmd, o, "Q or Fp (odd)");

  CLI::App* tri = app.add_subcommand("triangle", "exactness checking");
  tri->require_subcommand(1);
  cmd = leaf(tri, "check", "verify a declared exact triangle",
             [&] { return cmd_triangle_check(o, out); });
  cmd->add_option("triangle", o.file, "triangle file")->required();
  add_ring(cmd, o, "Q or Fp (odd)");

  CLI::App* cor = app.add_subcommand("corpus", "built-in examples");
  cor->require_subcommand(1);
  cmd = leaf(cor, "list", "entry names",
             [&] { return cmd_corpus_list(o, out); });
  cmd = leaf(cor, "emit", "write an entry in the complex schema",
             [&] { return cmd_corpus_emit(o, out); });
  cmd->add_option("name", o.name, "entry name")->required();
  cmd->add_option("-o,--output", o.out_path, "output file");

  std::vector<const char*> argv;
  argv.push_back("floercalc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const CLI::App* cur = &app;
  while (!cur->get_subcommands().empty())
    cur = cur->get_subcommands().front();
  auto it = handlers.find(cur);
  if (it == handlers.end()) {
    err << "error: no action for this subcommand\n";
    return 2;
  }
  try {
    return it->second();
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const math_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace floercalc
