#include "qpencil/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "qpencil/error.hpp"

namespace qpencil {

namespace {

// Maps JSON pointers ("/F/1/0") to the line and column where the value
// starts. Only run on text that already parsed, so it can be lenient.
class LocationIndex {
 public:
  explicit LocationIndex(std::string_view text) : s_(text) {
    if (!s_.empty()) value("");
  }

  std::pair<int, int> at(std::string ptr) const {
    for (;;) {
      const auto it = loc_.find(ptr);
      if (it != loc_.end()) return it->second;
      if (ptr.empty()) return {1, 1};
      ptr.erase(ptr.rfind('/'));
    }
  }

 private:
  void step() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  bool done() const { return pos_ >= s_.size(); }
  void ws() {
    while (!done() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) step();
  }
  std::string string() {
    std::string out;
    step();  // opening quote
    while (!done() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') step();
      if (!done()) out += s_[pos_];
      step();
    }
    if (!done()) step();
    return out;
  }
  void value(const std::string& path) {
    ws();
    if (done()) return;
    loc_.emplace(path, std::make_pair(line_, col_));
    const char c = s_[pos_];
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      step();
      for (std::size_t i = 0;; ++i) {
        ws();
        if (done() || s_[pos_] == close) break;
        std::string child = path + "/" + std::to_string(i);
        if (c == '{') {
          child = path + "/" + string();
          ws();
          if (!done()) step();  // ':'
        }
        value(child);
        ws();
        if (!done() && s_[pos_] == ',') step();
      }
      if (!done()) step();
    } else if (c == '"') {
      string();
    } else {
      while (!done() && std::string_view(",]} \t\r\n").find(s_[pos_]) == std::string_view::npos) step();
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  std::map<std::string, std::pair<int, int>> loc_;
};

class Validator {
 public:
  Validator(const LocationIndex& idx, std::string source) : idx_(idx), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& field, const std::string& problem) const {
    const auto [line, col] = idx_.at(ptr);
    throw Error(Errc::InvalidInput, source_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                        field + ": " + problem);
  }

  Rational rational(const Json& v, const std::string& ptr, const std::string& field) const {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Rational(v.get<unsigned long>()) : Rational(v.get<long>());
    if (v.is_number_float()) fail(ptr, field, "floating-point values are not allowed; use an integer or a \"p/q\" string");
    if (!v.is_string()) fail(ptr, field, "expected an integer or a \"p/q\" string");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error&) {
      fail(ptr, field, "'" + v.get<std::string>() + "' is not a rational number");
    }
  }

  std::vector<Rational> vector(const Json& v, std::size_t len, const std::string& ptr, const std::string& field) const {
    if (!v.is_array()) fail(ptr, field, "expected an array");
    if (v.size() != len) fail(ptr, field, "expected " + std::to_string(len) + " entries, found " + std::to_string(v.size()));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < len; ++i)
      out.push_back(rational(v[i], ptr + "/" + std::to_string(i), field + "[" + std::to_string(i) + "]"));
    return out;
  }

  QMatrix symmetric(const Json& v, std::size_t dim, const std::string& name) const {
    const std::string ptr = "/" + name;
    if (!v.is_array()) fail(ptr, name, "expected an array of rows");
    if (v.size() != dim) fail(ptr, name, "expected " + std::to_string(dim) + " rows, found " + std::to_string(v.size()));
    QMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto row = vector(v[i], dim, ptr + "/" + std::to_string(i), name + "[" + std::to_string(i) + "]");
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = row[j];
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (m(i, j) != m(j, i)) {
          const std::string at = name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
          fail(ptr + "/" + std::to_string(i) + "/" + std::to_string(j), at,
               "matrix is not symmetric: " + at + " = " + to_string(m(i, j)) + " but " + name + "[" +
                   std::to_string(j) + "][" + std::to_string(i) + "] = " + to_string(m(j, i)));
        }
    return m;
  }

 private:
  const LocationIndex& idx_;
  std::string source_;
};

Instance instance_from(const Json& j, const Validator& v) {
  static const std::vector<std::string> known{"F", "G", "n", "plane", "point", "route", "seed"};
  if (!j.is_object()) v.fail("", "instance", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) v.fail("/" + key, key, "unknown field");
  for (const char* key : {"n", "F", "G", "plane"})
    if (!j.contains(key)) v.fail("", key, "missing required field");

  const Json& jn = j["n"];
  if (!jn.is_number_integer() || jn.get<long>() < 4 || jn.get<long>() > 64)
    v.fail("/n", "n", "expected an integer between 4 and 64");
  const auto dim = static_cast<std::size_t>(jn.get<long>() + 1);

  Instance inst;
  inst.F = QuadraticForm(v.symmetric(j["F"], dim, "F"));
  inst.G = QuadraticForm(v.symmetric(j["G"], dim, "G"));

  const Json& jp = j["plane"];
  if (!jp.is_array() || jp.size() != 3) v.fail("/plane", "plane", "expected 3 basis vectors");
  QMatrix basis(dim, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto col = v.vector(jp[c], dim, "/plane/" + std::to_string(c), "plane[" + std::to_string(c) + "]");
    for (std::size_t r = 0; r < dim; ++r) basis(r, c) = col[r];
  }
  try {
    inst.plane = LinearSubspace(dim, basis);
  } catch (const Error&) {
    v.fail("/plane", "plane", "basis vectors are linearly dependent");
  }

  if (j.contains("point")) {
    const auto p = v.vector(j["point"], dim, "/point", "point");
    if (std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; }))
      v.fail("/point", "point", "the zero vector is not a projective point");
    if (inst.F.evaluate(p) != 0 || inst.G.evaluate(p) != 0)
      v.fail("/point", "point", "does not satisfy F = G = 0");
    inst.point = ProjectivePoint(p).coords();
  }
  if (j.contains("route")) {
    if (!j["route"].is_string()) v.fail("/route", "route", "expected a route name");
    try {
      inst.route = parse_route(j["route"].get<std::string>());
    } catch (const Error&) {
      v.fail("/route", "route", "unknown route '" + j["route"].get<std::string>() + "'");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) v.fail("/seed", "seed", "expected a non-negative integer");
    inst.seed = j["seed"].get<std::uint64_t>();
  }
  return inst;
}

// --- Readers for report data --------------------------------------------------

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInput, "malformed report: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing '") + key + "'");
  return j[key];
}

Rational read_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("expected a rational");
  return parse_rational(j.get<std::string>());
}

Integer read_integer(const Json& j) {
  const Rational r = read_rational(j);
  if (!is_integer(r)) bad("expected an integer");
  return r.get_num();
}

std::vector<Integer> read_integers(const Json& j) {
  if (!j.is_array()) bad("expected an array");
  std::vector<Integer> v;
  for (const auto& x : j) v.push_back(read_integer(x));
  return v;
}

QMatrix read_matrix(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("expected a matrix");
  QMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != m.cols()) bad("ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = read_rational(j[r][c]);
  }
  return m;
}

UniPoly read_poly(const Json& j) {
  const Json& c = field(j, "coefficients");
  if (!c.is_array()) bad("expected polynomial coefficients");
  std::vector<Rational> v;
  for (const auto& x : c) v.push_back(read_rational(x));
  return UniPoly(std::move(v));
}

Place read_place(const Json& j) {
  if (!j.is_string()) bad("expected a place");
  const auto s = j.get<std::string>();
  return s == "inf" ? Place::real() : Place::prime(parse_rational(s).get_num());
}

template <typename T>
T read_count(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad("expected a count");
  return j.get<T>();
}

Json point_json(const ProjectivePoint& p) { return to_json(p.coords()); }

}  // namespace

// --- Instances -------------------------------------------------------------------

Instance parse_instance(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto colon = what.find(": ", what.find("parse error"));
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw Error(Errc::InvalidInput, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                        ": invalid JSON: " + what);
  }
  const LocationIndex idx(text);
  return instance_from(j, Validator(idx, source));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), path);
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n();
  j["F"] = to_json(inst.F.gram());
  j["G"] = to_json(inst.G.gram());
  const QMatrix& b = inst.plane.basis();
  Json plane = Json::array();
  for (std::size_t c = 0; c < b.cols(); ++c) {
    Json col = Json::array();
    for (std::size_t r = 0; r < b.rows(); ++r) col.push_back(to_string(b(r, c)));
    plane.push_back(col);
  }
  j["plane"] = plane;
  if (inst.point) j["point"] = to_json(*inst.point);
  if (inst.route) j["route"] = route_name(*inst.route);
  if (inst.seed) j["seed"] = *inst.seed;
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

// --- Writers ---------------------------------------------------------------------

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json to_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    a.push_back(row);
  }
  return a;
}

Json to_json(const UniPoly& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_string(x));
  return Json{{"coefficients", c}, {"text", p.to_string("lambda")}};
}

Json to_json(const DiscriminantData& d) {
  Json j;
  j["dim"] = d.dim;
  j["identically_zero"] = d.identically_zero;
  if (d.identically_zero) return j;
  j["P"] = to_json(d.P);
  j["mu_multiplicity"] = d.mu_multiplicity;
  Json f = Json::array();
  for (const auto& x : d.factorization.factors) f.push_back({{"factor", to_json(x.poly)}, {"multiplicity", x.multiplicity}});
  j["factorization"] = {{"unit", to_string(d.factorization.unit)}, {"factors", f}};
  Json recs = Json::array();
  for (const auto& r : d.records) {
    Json x;
    x["at_infinity"] = r.at_infinity;
    if (!r.at_infinity) x["factor"] = to_json(r.factor);
    x["degree"] = r.degree();
    x["multiplicity"] = r.multiplicity;
    x["rank"] = r.rank;
    x["radical_dim"] = r.radical.cols();
    recs.push_back(x);
  }
  j["records"] = recs;
  j["total_degree"] = total_discriminant_degree(d);
  j["min_member_rank"] = d.min_member_rank();
  return j;
}

Json to_json(const CensusReport& c) {
  Json members = Json::array();
  for (const auto& m : c.members) {
    Json x;
    x["kind"] = m.kind == CensusMember::Kind::RationalRoot    ? "rational"
                : m.kind == CensusMember::Kind::ConjugatePair ? "conjugate-pair"
                                                              : "higher-degree";
    x["factor"] = to_json(m.factor);
    if (m.kind == CensusMember::Kind::RationalRoot) x["lambda"] = to_string(m.lambda);
    x["rank"] = m.rank;
    x["count"] = m.count;
    members.push_back(x);
  }
  return Json{{"s", c.s}, {"members", members}, {"inequality_ok", c.inequality_ok}, {"g_rank", c.g_rank}};
}

Json to_json(const RankFourPairReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["witness"] = r.witness == RankFourPairReport::Witness::None           ? "none"
                 : r.witness == RankFourPairReport::Witness::RationalPair ? "rational-pair"
                                                                          : "quadratic-factor";
  Json pair = Json::array();
  for (const auto& m : r.rational_pair)
    pair.push_back(m.at_infinity ? Json{{"at_infinity", true}} : Json{{"lambda", to_string(m.lambda)}});
  j["rational_pair"] = pair;
  if (r.witness == RankFourPairReport::Witness::QuadraticFactor) j["quadratic_factor"] = to_json(r.quadratic_factor);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["n"] = r.n;
  j["non_conical"] = r.non_conical;
  j["rank_F"] = r.rank_F;
  j["rank_G"] = r.rank_G;
  j["min_member_rank"] = r.min_member_rank;
  j["route"] = route_name(r.route);
  j["hypothesis_failures"] = r.hypothesis_failures;
  if (r.census) j["census"] = to_json(*r.census);
  if (r.rank_four_pair) j["rank_four_pair"] = to_json(*r.rank_four_pair);
  if (!r.singular_line_subcase.empty()) j["singular_line_subcase"] = r.singular_line_subcase;
  j["hyperplane_drop"] = r.hyperplane_drop;
  return j;
}

Json to_json(const SmoothnessReport& s) {
  return Json{{"smooth", s.smooth},
              {"sample_prime", s.sample_prime},
              {"sampled_points", s.sampled_points},
              {"singular_samples", s.singular_samples}};
}

namespace {
Json verdicts_json(const std::vector<PlaceVerdict>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"place", v.place.to_string()}, {"solvable", v.solvable}});
  return a;
}
}  // namespace

Json to_json(const LocalReport& r) {
  Json failing = Json::array();
  for (const auto& p : r.failing_places()) failing.push_back(p.to_string());
  return Json{{"verdicts", verdicts_json(r.verdicts)}, {"globally_solvable", r.globally_solvable}, {"failing_places", failing}};
}

Json to_json(const ObstructionCertificate& c) {
  Json j;
  if (c.kind == ObstructionCertificate::Kind::DefiniteRealMember) {
    j["kind"] = "definite-real-member";
    j["member"] = c.real.at_infinity ? Json{{"at_infinity", true}} : Json{{"lambda", to_string(c.real.lambda)}};
  } else {
    j["kind"] = "padic-empty";
    j["prime"] = c.padic.prime;
    j["level"] = c.padic.level;
    j["surviving"] = c.padic.surviving;
    j["max_level"] = c.max_level;
    j["budget"] = c.budget;
  }
  return j;
}

Json to_json(const LocalEvidence& e) {
  Json places = Json::array();
  for (const auto& p : e.places) {
    Json x{{"place", p.place.to_string()}, {"status", p.status}};
    if (!p.place.is_real()) {
      x["points"] = p.points;
      x["smooth_points"] = p.smooth_points;
    }
    places.push_back(x);
  }
  Json j{{"places", places}};
  if (e.obstruction) j["obstruction"] = to_json(*e.obstruction);
  return j;
}

Json to_json(const DescentTrace& t) {
  Json j;
  j["route"] = route_name(t.route);
  j["method"] = t.method;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json x;
    x["n"] = s.n;
    x["route"] = route_name(s.route);
    x["hyperplane"] = to_json(s.hyperplane.alphas);
    x["certificate"] = {{"accepted", s.certificate.accepted},
                        {"rank_F", s.certificate.rank_F},
                        {"rank_G", s.certificate.rank_G},
                        {"radicals_avoided", s.certificate.radicals_avoided}};
    x["quintic_required"] = s.quintic_required;
    x["irreducible_quintic"] = s.irreducible_quintic;
    x["candidates_examined"] = s.candidates_examined;
    steps.push_back(x);
  }
  j["steps"] = steps;
  if (t.fiber) {
    const FiberStep& f = *t.fiber;
    j["fiber"] = {{"t", to_json(std::vector<Integer>{f.t0, f.t1})},
                  {"residual", to_json(f.residual.gram())},
                  {"verdicts", verdicts_json(f.verdicts)},
                  {"conic_point", point_json(f.conic_point)},
                  {"fibers_examined", f.fibers_examined},
                  {"degenerate_fibers", f.degenerate_fibers}};
  }
  if (t.weil) {
    Json kp = Json::array();
    for (const auto& c : t.weil->kpoint) kp.push_back(to_json(c));
    j["weil"] = {{"modulus", to_json(t.weil->modulus)}, {"kpoint", kp}};
  }
  if (t.conic_point) j["conic_point"] = point_json(*t.conic_point);
  if (t.singular_lambda) j["singular_lambda"] = to_string(*t.singular_lambda);
  j["point"] = point_json(t.point);
  j["check_F"] = to_string(t.check_F);
  j["check_G"] = to_string(t.check_G);
  return j;
}

const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::PointFound: return "point-found";
    case SearchOutcome::LocalObstruction: return "local-obstruction";
    case SearchOutcome::BoundsExhausted: return "bounds-exhausted";
  }
  return "?";
}

Json to_json(const SearchResult& r) {
  Json j;
  j["outcome"] = outcome_name(r.outcome);
  if (r.point) j["point"] = point_json(*r.point);
  if (r.trace) j["trace"] = to_json(*r.trace);
  j["local"] = to_json(r.local);
  j["hypotheses"] = to_json(r.hypotheses);
  j["hyperplanes_examined"] = r.hyperplanes_examined;
  j["fibers_examined"] = r.fibers_examined;
  return j;
}

// --- Readers ---------------------------------------------------------------------

DescentTrace trace_from_json(const Json& j) {
  DescentTrace t;
  try {
    t.route = parse_route(field(j, "route").get<std::string>());
    t.method = field(j, "method").get<std::string>();
    for (const auto& x : field(j, "steps")) {
      HyperplaneStep s;
      s.n = read_count<std::size_t>(field(x, "n"));
      s.route = parse_route(field(x, "route").get<std::string>());
      s.hyperplane.alphas = read_integers(field(x, "hyperplane"));
      s.hyperplane.height = 0;
      for (const auto& a : s.hyperplane.alphas)
        if (abs(a) > s.hyperplane.height) s.hyperplane.height = abs(a);
      const Json& c = field(x, "certificate");
      s.certificate.accepted = field(c, "accepted").get<bool>();
      s.certificate.rank_F = read_count<std::size_t>(field(c, "rank_F"));
      s.certificate.rank_G = read_count<std::size_t>(field(c, "rank_G"));
      s.certificate.radicals_avoided = field(c, "radicals_avoided").get<bool>();
      s.quintic_required = field(x, "quintic_required").get<bool>();
      s.irreducible_quintic = field(x, "irreducible_quintic").get<bool>();
      s.candidates_examined = read_count<std::uint64_t>(field(x, "candidates_examined"));
      t.steps.push_back(s);
    }
    if (j.contains("fiber")) {
      const Json& f = j["fiber"];
      FiberStep s;
      const auto tt = read_integers(field(f, "t"));
      if (tt.size() != 2) bad("fiber parameter");
      s.t0 = tt[0];
      s.t1 = tt[1];
      s.residual = QuadraticForm(read_matrix(field(f, "residual")));
      for (const auto& v : field(f, "verdicts"))
        s.verdicts.push_back(PlaceVerdict{read_place(field(v, "place")), field(v, "solvable").get<bool>()});
      s.conic_point = ProjectivePoint(read_integers(field(f, "conic_point")));
      s.fibers_examined = read_count<std::uint64_t>(field(f, "fibers_examined"));
      s.degenerate_fibers = read_count<std::uint64_t>(field(f, "degenerate_fibers"));
      t.fiber = s;
    }
    if (j.contains("weil")) {
      WeilStep w;
      w.modulus = read_poly(field(j["weil"], "modulus"));
      for (const auto& c : field(j["weil"], "kpoint")) w.kpoint.push_back(read_poly(c));
      t.weil = w;
    }
    if (j.contains("conic_point")) t.conic_point = ProjectivePoint(read_integers(j["conic_point"]));
    if (j.contains("singular_lambda")) t.singular_lambda = read_rational(j["singular_lambda"]);
    t.point = ProjectivePoint(read_integers(field(j, "point")));
    t.check_F = read_rational(field(j, "check_F"));
    t.check_G = read_rational(field(j, "check_G"));
  } catch (const Json::exception& e) {
    bad(e.what());
  }
  return t;
}

ObstructionCertificate obstruction_from_json(const Json& j) {
  ObstructionCertificate c;
  try {
    const auto kind = field(j, "kind").get<std::string>();
    if (kind == "definite-real-member") {
      c.kind = ObstructionCertificate::Kind::DefiniteRealMember;
      const Json& m = field(j, "member");
      c.real.at_infinity = m.contains("at_infinity") && m["at_infinity"].get<bool>();
      if (!c.real.at_infinity) c.real.lambda = read_rational(field(m, "lambda"));
    } else if (kind == "padic-empty") {
      c.kind = ObstructionCertificate::Kind::PadicEmpty;
      c.padic.prime = read_count<std::uint64_t>(field(j, "prime"));
      c.padic.level = read_count<unsigned>(field(j, "level"));
      c.padic.surviving = field(j, "surviving").get<std::vector<std::uint64_t>>();
      c.max_level = read_count<unsigned>(field(j, "max_level"));
      c.budget = read_count<std::uint64_t>(field(j, "budget"));
    } else {
      bad("unknown obstruction kind '" + kind + "'");
    }
  } catch (const Json::exception& e) {
    bad(e.what());
  }
  return c;
}

ReplayReport replay_report(const Json& report) {
  ReplayReport rr;
  const Instance inst = parse_instance(field(report, "instance").dump(), "report instance");
  const Json& res = field(report, "result");
  bool replayed = false;
  if (res.contains("trace")) {
    const DescentTrace t = trace_from_json(res["trace"]);
    rr = replay_trace(inst.F, inst.G, inst.plane, t);
    if (res.contains("point") && ProjectivePoint(read_integers(res["point"])) != t.point) {
      rr.ok = false;
      rr.mismatches.push_back("reported point differs from the trace");
    }
    replayed = true;
  }
  if (res.contains("local") && res["local"].contains("obstruction")) {
    const auto c = obstruction_from_json(res["local"]["obstruction"]);
    if (!replay_obstruction(inst.F, inst.G, c)) {
      rr.ok = false;
      rr.mismatches.push_back("obstruction certificate does not replay");
    }
    replayed = true;
  }
  // Exhaustion reports carry no certificate; there is nothing to contradict.
  (void)replayed;
  return rr;
}

}  // namespace qpencil
