#include "chainmodel/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace chainmodel {

namespace {

using nlohmann::json;

json ring_to_json(const RingDesc& r) {
  if (r.kind == RingDesc::Kind::integers) return json{{"kind", "Z"}};
  return json{{"kind", "Fp"}, {"p", std::to_string(r.p)}};
}

RingDesc ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("ring: missing 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Z") return RingDesc::integers();
  if (kind == "Fp") {
    if (!j.contains("p")) throw IoError("ring: prime field without 'p'");
    long long p = std::stoll(j.at("p").get<std::string>());
    try {
      return RingDesc::prime_field(p);
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("ring: ") + e.what());
    }
  }
  throw IoError("ring: unknown kind '" + kind + "'");
}

template <class S>
json matrix_to_json(const Mat<S>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      std::ostringstream os;
      os << m(i, j);
      row.push_back(os.str());
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <class S>
Mat<S> matrix_from_json(const Ring<S>& ring, const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw IoError(where + ": matrix needs rows/cols/entries");
  Index rows = j.at("rows").get<Index>();
  Index cols = j.at("cols").get<Index>();
  const json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows)
    throw IoError(where + ": expected " + std::to_string(rows) + " entry rows");
  Mat<S> m = ring_zeros(ring, rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = entries.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw IoError(where + ": row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                    " entries, expected " + std::to_string(cols));
    for (Index jc = 0; jc < cols; ++jc) {
      try {
        m(i, jc) = ring.parse(row.at(static_cast<size_t>(jc)).get<std::string>());
      } catch (const std::exception&) {
        throw IoError(where + ": entry (" + std::to_string(i) + "," + std::to_string(jc) +
                      ") is not a decimal integer");
      }
    }
  }
  return m;
}

template <class S>
json complex_to_json(const ChainComplex<S>& x) {
  json diffs = json::array();
  for (int n = x.min_degree() + 1; n <= x.max_degree(); ++n)
    diffs.push_back(json{{"degree", n}, {"matrix", matrix_to_json<S>(x.diff(n))}});
  json ranks = json::array();
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) ranks.push_back(x.rank(n));
  return json{{"min_degree", x.empty() ? 0 : x.min_degree()},
              {"ranks", std::move(ranks)},
              {"differentials", std::move(diffs)}};
}

template <class S>
ChainComplex<S> complex_from_json(const Ring<S>& ring, const json& j, const std::string& where) {
  if (!j.contains("min_degree") || !j.contains("ranks"))
    throw IoError(where + ": complex needs min_degree and ranks");
  int lo = j.at("min_degree").get<int>();
  std::vector<Index> ranks;
  for (const auto& r : j.at("ranks")) ranks.push_back(r.get<Index>());
  std::vector<Mat<S>> diffs;
  for (size_t i = 0; i + 1 < ranks.size(); ++i)
    diffs.push_back(ring_zeros(ring, ranks[i], ranks[i + 1]));
  if (j.contains("differentials")) {
    for (const auto& d : j.at("differentials")) {
      if (!d.contains("degree") || !d.contains("matrix"))
        throw IoError(where + ": differential needs degree and matrix");
      int n = d.at("degree").get<int>();
      if (n <= lo || n > lo + static_cast<int>(ranks.size()) - 1)
        throw IoError(where + ": differential at degree " + std::to_string(n) +
                      " is outside the degree range");
      Mat<S> m = matrix_from_json<S>(ring, d.at("matrix"),
                                     where + ": differential at degree " + std::to_string(n));
      size_t slot = static_cast<size_t>(n - lo - 1);
      if (m.rows() != ranks[slot] || m.cols() != ranks[slot + 1])
        throw IoError(where + ": differential at degree " + std::to_string(n) + " has shape " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                      std::to_string(ranks[slot]) + "x" + std::to_string(ranks[slot + 1]));
      diffs[slot] = std::move(m);
    }
  }
  ChainComplex<S> x(ring, lo, std::move(ranks), std::move(diffs));
  if (ValidationResult v = validate(x); !v)
    throw IoError(where + ": invariant violation at degree " + std::to_string(v.degree) + ": " +
                  v.message);
  return x;
}

template <class S>
json chain_map_to_json(const ChainMap<S>& f) {
  json comps = json::array();
  for (int n = f.lo(); n <= f.hi(); ++n) {
    Mat<S> c = f.component(n);
    if (is_zero(c)) continue;
    comps.push_back(json{{"degree", n}, {"matrix", matrix_to_json<S>(c)}});
  }
  return json{{"source", complex_to_json(f.source())},
              {"target", complex_to_json(f.target())},
              {"components", std::move(comps)}};
}

template <class S>
ChainMap<S> chain_map_from_json(const Ring<S>& ring, const json& j, const std::string& where) {
  if (!j.contains("source") || !j.contains("target"))
    throw IoError(where + ": chain map needs source and target");
  ChainComplex<S> src = complex_from_json<S>(ring, j.at("source"), where + ": source");
  ChainComplex<S> tgt = complex_from_json<S>(ring, j.at("target"), where + ": target");
  DegreeMap<S> comps;
  if (j.contains("components")) {
    for (const auto& c : j.at("components")) {
      int n = c.at("degree").get<int>();
      Mat<S> m = matrix_from_json<S>(ring, c.at("matrix"),
                                     where + ": component at degree " + std::to_string(n));
      if (m.rows() != tgt.rank(n) || m.cols() != src.rank(n))
        throw IoError(where + ": component at degree " + std::to_string(n) + " has shape " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                      std::to_string(tgt.rank(n)) + "x" + std::to_string(src.rank(n)));
      comps.set(n, std::move(m));
    }
  }
  try {
    return ChainMap<S>(std::move(src), std::move(tgt), std::move(comps));
  } catch (const std::invalid_argument& e) {
    throw IoError(where + ": " + e.what());
  }
}

json group_to_json(const PresentedGroup& g) {
  json torsion = json::array();
  for (const Integer& d : g.torsion) torsion.push_back(d.str());
  return json{{"torsion", std::move(torsion)}, {"free_rank", g.free_rank}};
}

PresentedGroup group_from_json(const RingDesc& ring, const json& j) {
  PresentedGroup g;
  g.ring = ring;
  if (j.contains("torsion"))
    for (const auto& t : j.at("torsion")) g.torsion.emplace_back(t.get<std::string>());
  if (j.contains("free_rank")) g.free_rank = j.at("free_rank").get<long>();
  return g;
}

json verdict_to_json(const Verdict& v) {
  json ces = json::array();
  for (const auto& ce : v.counterexamples)
    ces.push_back(json{{"clause", ce.clause},
                       {"seed", std::to_string(ce.seed)},
                       {"index", ce.index},
                       {"detail", ce.detail}});
  return json{{"passed", v.passed()},
              {"samples_run", v.samples_run},
              {"inconclusive", v.inconclusive},
              {"counterexamples", std::move(ces)},
              {"notes", v.notes}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  if (j.contains("samples_run")) v.samples_run = j.at("samples_run").get<long>();
  if (j.contains("inconclusive")) v.inconclusive = j.at("inconclusive").get<long>();
  if (j.contains("counterexamples"))
    for (const auto& c : j.at("counterexamples")) {
      CheckCounterexample ce;
      ce.clause = c.value("clause", "");
      ce.seed = std::stoull(c.value("seed", "0"));
      ce.index = c.value("index", 0L);
      ce.detail = c.value("detail", "");
      v.counterexamples.push_back(std::move(ce));
    }
  if (j.contains("notes"))
    for (const auto& n : j.at("notes")) v.notes.push_back(n.get<std::string>());
  return v;
}

json keps_module_to_json(const KEpsModule& m) {
  return json{{"dim", m.dim()}, {"eps", matrix_to_json<Fp>(m.eps())}};
}

KEpsModule keps_module_from_json(const Ring<Fp>& field, const json& j, const std::string& where) {
  if (!j.contains("eps")) throw IoError(where + ": module needs eps");
  Mat<Fp> eps = matrix_from_json<Fp>(field, j.at("eps"), where + ": eps");
  if (j.contains("dim") && j.at("dim").get<Index>() != eps.rows())
    throw IoError(where + ": dim disagrees with the eps matrix");
  try {
    return KEpsModule(field, std::move(eps));
  } catch (const std::invalid_argument& e) {
    throw IoError(where + ": " + e.what());
  }
}

json keps_hom_to_json(const KEpsHom& h) {
  return json{{"source", keps_module_to_json(h.source())},
              {"target", keps_module_to_json(h.target())},
              {"matrix", matrix_to_json<Fp>(h.matrix())}};
}

KEpsHom keps_hom_from_json(const Ring<Fp>& field, const json& j, const std::string& where) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("matrix"))
    throw IoError(where + ": hom needs source, target, matrix");
  KEpsModule src = keps_module_from_json(field, j.at("source"), where + ": source");
  KEpsModule tgt = keps_module_from_json(field, j.at("target"), where + ": target");
  Mat<Fp> m = matrix_from_json<Fp>(field, j.at("matrix"), where + ": matrix");
  try {
    return KEpsHom(std::move(src), std::move(tgt), std::move(m));
  } catch (const std::invalid_argument& e) {
    throw IoError(where + ": " + e.what());
  }
}

}  // namespace

std::string Document::type_name() const {
  struct Visitor {
    std::string operator()(const ChainComplex<Integer>&) const { return "complex"; }
    std::string operator()(const ChainComplex<Fp>&) const { return "complex"; }
    std::string operator()(const ChainMap<Integer>&) const { return "chain_map"; }
    std::string operator()(const ChainMap<Fp>&) const { return "chain_map"; }
    std::string operator()(const KEpsModule&) const { return "keps_module"; }
    std::string operator()(const KEpsHom&) const { return "keps_hom"; }
    std::string operator()(const Verdict&) const { return "verdict"; }
    std::string operator()(const PresentedGroup&) const { return "group"; }
  };
  return std::visit(Visitor{}, payload);
}

Document make_document(ChainComplex<Integer> x) { return {RingDesc::integers(), std::move(x)}; }
Document make_document(ChainComplex<Fp> x) {
  RingDesc r = x.ring().desc();
  return {r, std::move(x)};
}
Document make_document(ChainMap<Integer> f) { return {RingDesc::integers(), std::move(f)}; }
Document make_document(ChainMap<Fp> f) {
  RingDesc r = f.ring().desc();
  return {r, std::move(f)};
}
Document make_document(KEpsModule m) {
  RingDesc r = m.field().desc();
  return {r, std::move(m)};
}
Document make_document(KEpsHom h) {
  RingDesc r = h.source().field().desc();
  return {r, std::move(h)};
}
Document make_document(RingDesc ring, Verdict v) { return {ring, std::move(v)}; }
Document make_document(PresentedGroup g) {
  RingDesc r = g.ring;
  return {r, std::move(g)};
}

std::string serialize_document(const Document& doc) {
  json j;
  j["schema_version"] = Document::kSchemaVersion;
  j["type"] = doc.type_name();
  j["ring"] = ring_to_json(doc.ring);
  struct Visitor {
    json operator()(const ChainComplex<Integer>& x) const { return complex_to_json(x); }
    json operator()(const ChainComplex<Fp>& x) const { return complex_to_json(x); }
    json operator()(const ChainMap<Integer>& f) const { return chain_map_to_json(f); }
    json operator()(const ChainMap<Fp>& f) const { return chain_map_to_json(f); }
    json operator()(const KEpsModule& m) const { return keps_module_to_json(m); }
    json operator()(const KEpsHom& h) const { return keps_hom_to_json(h); }
    json operator()(const Verdict& v) const { return verdict_to_json(v); }
    json operator()(const PresentedGroup& g) const { return group_to_json(g); }
  };
  j["payload"] = std::visit(Visitor{}, doc.payload);
  return j.dump(2) + "\n";
}

Document parse_document(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(origin + ": " + e.what());
  }
  if (!j.contains("schema_version")) throw IoError(origin + ": missing schema_version");
  std::string version = j.at("schema_version").get<std::string>();
  if (version != Document::kSchemaVersion)
    throw IoError(origin + ": unknown schema version '" + version + "'");
  if (!j.contains("type") || !j.contains("ring") || !j.contains("payload"))
    throw IoError(origin + ": document needs type, ring and payload");
  RingDesc ring = ring_from_json(j.at("ring"));
  std::string type = j.at("type").get<std::string>();
  const json& p = j.at("payload");

  if (type == "complex") {
    if (ring.kind == RingDesc::Kind::integers)
      return {ring, complex_from_json<Integer>(Ring<Integer>{}, p, origin)};
    return {ring, complex_from_json<Fp>(Ring<Fp>{ring.p}, p, origin)};
  }
  if (type == "chain_map") {
    if (ring.kind == RingDesc::Kind::integers)
      return {ring, chain_map_from_json<Integer>(Ring<Integer>{}, p, origin)};
    return {ring, chain_map_from_json<Fp>(Ring<Fp>{ring.p}, p, origin)};
  }
  if (type == "keps_module") {
    if (ring.kind != RingDesc::Kind::prime_field)
      throw IoError(origin + ": keps_module requires a prime field ring");
    return {ring, keps_module_from_json(Ring<Fp>{ring.p}, p, origin)};
  }
  if (type == "keps_hom") {
    if (ring.kind != RingDesc::Kind::prime_field)
      throw IoError(origin + ": keps_hom requires a prime field ring");
    return {ring, keps_hom_from_json(Ring<Fp>{ring.p}, p, origin)};
  }
  if (type == "verdict") return {ring, verdict_from_json(p)};
  if (type == "group") return {ring, group_from_json(ring, p)};
  throw IoError(origin + ": unknown document type '" + type + "'");
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string());
}

void store_document(const Document& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open file for writing");
  out << serialize_document(doc);
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace chainmodel
