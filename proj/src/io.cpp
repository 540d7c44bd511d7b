#include "floercalc/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace floercalc {

namespace {

std::size_t mod8(std::size_t q) { return q % 8; }

const Json& member(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw parse_error(what + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw parse_error(what + " is missing the '" + key + "' field");
  return *it;
}

void reject_unknown_keys(const Json& j,
                         std::initializer_list<const char*> keys,
                         const std::string& what) {
  if (!j.is_object()) throw parse_error(what + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known |= item.key() == k;
    if (!known)
      throw parse_error("unknown field '" + item.key() + "' in " + what);
  }
}

std::string string_field(const Json& j, const char* key,
                         const std::string& what) {
  const Json& v = member(j, key, what);
  if (!v.is_string())
    throw parse_error(what + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t small_count(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw parse_error(what + " must be a nonnegative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

// id -> (degree, index within its degree)
struct GenIndex {
  std::map<std::string, std::pair<std::size_t, std::size_t>> where;

  explicit GenIndex(const FloerComplex& c) {
    for (std::size_t q = 0; q < 8; ++q)
      for (std::size_t i = 0; i < c.gens[q].size(); ++i)
        where.emplace(c.gens[q][i], std::make_pair(q, i));
  }

  std::pair<std::size_t, std::size_t> find(const std::string& id,
                                           const std::string& what) const {
    auto it = where.find(id);
    if (it == where.end())
      throw parse_error(what + " refers to unknown generator '" + id + "'");
    return it->second;
  }
};

// triples {"from","to","coeff"} into per-degree matrices indexed
// (to, from); `degree` is how much each entry must raise the grading
void read_triples(const Json& arr, const std::string& what,
                  const GenIndex& from_ix, const GenIndex& to_ix,
                  std::size_t degree, std::array<IntMatrix, 8>& into) {
  if (!arr.is_array()) throw parse_error(what + " must be an array");
  std::set<std::pair<std::string, std::string>> seen;
  for (const Json& e : arr) {
    reject_unknown_keys(e, {"from", "to", "coeff"}, what + " entry");
    std::string from = string_field(e, "from", what);
    std::string to = string_field(e, "to", what);
    auto [qf, jf] = from_ix.find(from, what);
    auto [qt, it] = to_ix.find(to, what);
    if (qt != mod8(qf + degree))
      throw parse_error(what + " entry '" + from + "' -> '" + to +
                        "' does not raise degree by " +
                        std::to_string(degree));
    if (!seen.emplace(from, to).second)
      throw parse_error("duplicate " + what + " entry '" + from + "' -> '" +
                        to + "'");
    into[qf](it, jf) = int_from_json(member(e, "coeff", what), what);
  }
}

// {id: coeff} objects for functionals/elements pinned to one degree
void read_assignments(const Json& obj, const std::string& what,
                      const GenIndex& ix, std::size_t degree,
                      const std::function<void(std::size_t, const Int&)>&
                          put) {
  if (!obj.is_object()) throw parse_error(what + " must be an object");
  for (const auto& item : obj.items()) {
    auto [q, i] = ix.find(item.key(), what);
    if (q != degree)
      throw parse_error(what + " assigns to '" + item.key() +
                        "', which is not in degree " +
                        std::to_string(degree));
    put(i, int_from_json(item.value(), what));
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed JSON");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed JSON in " + path);
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw parse_error("failed writing to " + path);
}

Json int_to_json(const Int& x) {
  static const Int lim = Int(1) << 62;
  if (x > -lim && x < lim) return Json(x.convert_to<long long>());
  return Json(x.str());
}

Int int_from_json(const Json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) return Int(v.get<std::string>());
  } catch (const std::exception&) {
  }
  throw parse_error(what +
                    ": coefficients must be integers (or decimal strings)");
}

std::string rat_to_string(const Rat& x) { return x.str(); }

Rat rat_from_json(const Json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
      Rat r(v.get<std::string>());
      return r;
    }
  } catch (const std::exception&) {
  }
  throw parse_error(what + ": entries must be integers or strings like "
                           "\"3/4\"");
}

FloerComplex complex_from_json(const Json& j) {
  reject_unknown_keys(
      j, {"flavor", "generators", "d", "v", "delta", "delta_prime"},
      "complex");
  std::string fl = string_field(j, "flavor", "complex");
  Flavor flavor;
  if (fl == "homology_sphere")
    flavor = Flavor::homology_sphere;
  else if (fl == "admissible")
    flavor = Flavor::admissible;
  else
    throw parse_error("unknown flavor '" + fl + "'");

  const Json& gens = member(j, "generators", "complex");
  if (!gens.is_array()) throw parse_error("'generators' must be an array");
  FloerComplex c = FloerComplex::empty(flavor);
  for (const Json& g : gens) {
    reject_unknown_keys(g, {"id", "degree"}, "generator");
    std::string id = string_field(g, "id", "generator");
    if (id.empty()) throw parse_error("generator ids must be nonempty");
    std::size_t q = small_count(member(g, "degree", "generator"),
                                "generator degree");
    if (q > 7) throw parse_error("generator degree must lie in 0..7");
    c.gens[q].push_back(id);
  }
  for (std::size_t q = 0; q < 8; ++q) {
    c.d[q] = IntMatrix(c.dim(q + 1), c.dim(q));
    c.v[q] = IntMatrix(c.dim(q + 4), c.dim(q));
  }
  if (flavor == Flavor::homology_sphere) {
    c.delta = IntMatrix(1, c.dim(4));
    c.delta_prime.assign(c.dim(1), Int(0));
  }

  GenIndex ix(c);
  if (ix.where.size() != c.total_dim())
    throw parse_error("duplicate generator ids");
  read_triples(member(j, "d", "complex"), "'d'", ix, ix, 1, c.d);
  read_triples(member(j, "v", "complex"), "'v'", ix, ix, 4, c.v);

  bool sphere = flavor == Flavor::homology_sphere;
  if (j.contains("delta")) {
    if (!sphere)
      throw parse_error("'delta' is forbidden for the admissible flavor");
    read_assignments(j["delta"], "'delta'", ix, 4,
                     [&](std::size_t i, const Int& x) { c.delta(0, i) = x; });
  }
  if (j.contains("delta_prime")) {
    if (!sphere)
      throw parse_error(
          "'delta_prime' is forbidden for the admissible flavor");
    read_assignments(
        j["delta_prime"], "'delta_prime'", ix, 1,
        [&](std::size_t i, const Int& x) { c.delta_prime[i] = x; });
  }
  return c;
}

Json complex_to_json(const FloerComplex& c) {
  Json j = Json::object();
  j["flavor"] = c.flavor == Flavor::homology_sphere ? "homology_sphere"
                                                    : "admissible";
  Json gens = Json::array();
  for (std::size_t q = 0; q < 8; ++q)
    for (const std::string& id : c.gens[q])
      gens.push_back(Json{{"id", id}, {"degree", q}});
  j["generators"] = std::move(gens);

  auto triples = [&](const std::array<IntMatrix, 8>& maps,
                     std::size_t degree) {
    Json arr = Json::array();
    for (std::size_t q = 0; q < 8; ++q)
      for (std::size_t col = 0; col < maps[q].cols(); ++col)
        for (std::size_t row = 0; row < maps[q].rows(); ++row)
          if (maps[q](row, col) != 0)
            arr.push_back(Json{{"from", c.gens[q][col]},
                               {"to", c.gens[mod8(q + degree)][row]},
                               {"coeff", int_to_json(maps[q](row, col))}});
    return arr;
  };
  j["d"] = triples(c.d, 1);
  j["v"] = triples(c.v, 4);

  if (c.flavor == Flavor::homology_sphere) {
    Json delta = Json::object();
    for (std::size_t i = 0; i < c.delta.cols(); ++i)
      if (c.delta(0, i) != 0)
        delta[c.gens[4][i]] = int_to_json(c.delta(0, i));
    j["delta"] = std::move(delta);
    Json dp = Json::object();
    for (std::size_t i = 0; i < c.delta_prime.size(); ++i)
      if (c.delta_prime[i] != 0)
        dp[c.gens[1][i]] = int_to_json(c.delta_prime[i]);
    j["delta_prime"] = std::move(dp);
  }
  return j;
}

Lattice lattice_from_json(const Json& j) {
  reject_unknown_keys(j, {"sign", "gram"}, "lattice");
  std::string s = string_field(j, "sign", "lattice");
  int sign;
  if (s == "negative")
    sign = -1;
  else if (s == "positive")
    sign = 1;
  else
    throw parse_error("lattice sign must be \"negative\" or \"positive\"");
  const Json& gram = member(j, "gram", "lattice");
  if (!gram.is_array() || gram.empty())
    throw parse_error("'gram' must be a nonempty array of rows");
  std::size_t n = gram.size();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = gram[i];
    if (!row.is_array() || row.size() != n)
      throw parse_error("'gram' must be square");
    for (std::size_t k = 0; k < n; ++k)
      g(i, k) = int_from_json(row[k], "'gram'");
  }
  return Lattice::from_gram(std::move(g), sign);
}

Json lattice_to_json(const Lattice& L) {
  Json j = Json::object();
  j["sign"] = L.sign < 0 ? "negative" : "positive";
  Json gram = Json::array();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < L.rank(); ++k)
      row.push_back(int_to_json(L.gram(i, k)));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  return j;
}

CobordismData cobordism_from_json(const Json& j) {
  reject_unknown_keys(j,
                      {"source", "target", "Wstar", "delta_W",
                       "delta_prime_W", "phi", "flags"},
                      "cobordism");
  CobordismData w;
  w.source = complex_from_json(member(j, "source", "cobordism"));
  w.target = complex_from_json(member(j, "target", "cobordism"));
  GenIndex src(w.source), tgt(w.target);
  if (src.where.size() != w.source.total_dim())
    throw parse_error("duplicate generator ids in the source complex");
  if (tgt.where.size() != w.target.total_dim())
    throw parse_error("duplicate generator ids in the target complex");

  for (std::size_t q = 0; q < 8; ++q)
    w.wstar[q] = IntMatrix(w.target.dim(q), w.source.dim(q));
  read_triples(member(j, "Wstar", "cobordism"), "'Wstar'", src, tgt, 0,
               w.wstar);

  w.delta_w = IntMatrix(1, w.source.dim(5));
  read_assignments(member(j, "delta_W", "cobordism"), "'delta_W'", src, 5,
                   [&](std::size_t i, const Int& x) { w.delta_w(0, i) = x; });
  w.delta_prime_w.assign(w.target.dim(0), Int(0));
  read_assignments(
      member(j, "delta_prime_W", "cobordism"), "'delta_prime_W'", tgt, 0,
      [&](std::size_t i, const Int& x) { w.delta_prime_w[i] = x; });

  if (j.contains("phi")) {
    std::array<IntMatrix, 8> phi;
    for (std::size_t q = 0; q < 8; ++q)
      phi[q] = IntMatrix(w.target.dim(q + 3), w.source.dim(q));
    read_triples(j["phi"], "'phi'", src, tgt, 3, phi);
    w.phi = std::move(phi);
  }
  if (j.contains("flags")) {
    const Json& f = j["flags"];
    reject_unknown_keys(f, {"negative_definite", "h1_trivial"}, "'flags'");
    if (f.contains("negative_definite")) {
      if (!f["negative_definite"].is_boolean())
        throw parse_error("'negative_definite' must be a boolean");
      w.negative_definite = f["negative_definite"].get<bool>();
    }
    if (f.contains("h1_trivial")) {
      if (!f["h1_trivial"].is_boolean())
        throw parse_error("'h1_trivial' must be a boolean");
      w.h1_trivial = f["h1_trivial"].get<bool>();
    }
  }
  return w;
}

TrianglePresentation triangle_from_json(const Json& j, const RingSpec& ring) {
  reject_unknown_keys(j, {"shifts", "vertices", "maps"}, "triangle");
  TrianglePresentation t;
  t.ring = ring;

  const Json& shifts = member(j, "shifts", "triangle");
  if (!shifts.is_array() || shifts.size() != 3)
    throw parse_error("'shifts' must be an array of 3 integers");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!shifts[i].is_number_integer())
      throw parse_error("'shifts' must be an array of 3 integers");
    t.shift[i] = shifts[i].get<int>();
  }

  const Json& verts = member(j, "vertices", "triangle");
  if (!verts.is_array() || verts.size() != 3)
    throw parse_error("'vertices' must be an array of 3 objects");
  for (std::size_t i = 0; i < 3; ++i) {
    reject_unknown_keys(verts[i], {"dims"}, "vertex");
    const Json& dims = member(verts[i], "dims", "vertex");
    if (!dims.is_array() || dims.size() != 8)
      throw parse_error("vertex 'dims' must list 8 degrees");
    for (std::size_t q = 0; q < 8; ++q)
      t.dims[i][q] = small_count(dims[q], "vertex dimension");
  }

  const Json& maps = member(j, "maps", "triangle");
  if (!maps.is_array() || maps.size() != 3)
    throw parse_error("'maps' must be an array of 3 objects");
  for (std::size_t i = 0; i < 3; ++i) {
    reject_unknown_keys(maps[i], {"matrices"}, "map");
    const Json& ms = member(maps[i], "matrices", "map");
    if (!ms.is_array() || ms.size() != 8)
      throw parse_error("map 'matrices' must list 8 degrees");
    for (std::size_t q = 0; q < 8; ++q) {
      const Json& m = ms[q];
      if (!m.is_array()) throw parse_error("matrices must be arrays of rows");
      std::size_t rows = m.size();
      std::size_t cols = t.dims[i][q];
      RatMatrix out(rows, rows == 0 ? cols : m[0].size());
      for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = m[r];
        if (!row.is_array() || row.size() != out.cols())
          throw parse_error("matrix rows must all have the same length");
        for (std::size_t cidx = 0; cidx < out.cols(); ++cidx)
          out(r, cidx) = rat_from_json(row[cidx], "matrix entry");
      }
      t.alpha[i][q] = std::move(out);
    }
  }
  return t;
}

}  // namespace floercalc
