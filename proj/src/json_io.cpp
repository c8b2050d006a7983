#include "expkern/json_io.hpp"

#include <climits>
#include <cmath>

namespace expkern::json_io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with key \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(what) + " must be finite");
  return v;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < INT_MIN / 2 || v > INT_MAX / 2) fail(std::string(what) + " is out of range");
  return static_cast<int>(v);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

std::size_t dimension(const Json& j) {
  const int d = integer(j, "dim");
  if (d < 1) fail("dim must be positive");
  return static_cast<std::size_t>(d);
}

}  // namespace

Json emit_complex(Complex c) {
  Json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

Complex parse_complex(const Json& j) {
  // a bare number is accepted as a real value
  if (j.is_number()) return {number(j, "value"), 0.0};
  return {number(field(j, "re"), "re"), number(field(j, "im"), "im")};
}

Json emit_point(std::span<const Complex> p) {
  Json j = Json::array();
  for (const auto& c : p) j.push_back(emit_complex(c));
  return j;
}

Point parse_point(const Json& j, std::optional<std::size_t> dim) {
  array(j, "theta");
  Point p;
  for (const auto& c : j) p.push_back(parse_complex(c));
  if (p.empty()) fail("point must have at least one component");
  if (dim && p.size() != *dim) throw DimensionMismatch("point has " + std::to_string(p.size()) +
                                                       " components, expected " + std::to_string(*dim));
  return p;
}

Json emit_index(const MultiIndex& a) { return Json(a.entries()); }

MultiIndex parse_index(const Json& j, std::optional<std::size_t> dim) {
  array(j, "index");
  std::vector<int> e;
  for (const auto& x : j) e.push_back(integer(x, "exponent"));
  if (e.empty()) fail("index must have at least one entry");
  if (dim && e.size() != *dim) throw DimensionMismatch("index has " + std::to_string(e.size()) +
                                                       " entries, expected " + std::to_string(*dim));
  return MultiIndex(std::move(e));
}

Json emit_poly(const LaurentPoly& f) {
  Json j = Json::array();
  for (const auto& [a, c] : f.terms()) {
    Json t;
    t["exp"] = emit_index(a);
    t["re"] = c.real();
    t["im"] = c.imag();
    j.push_back(std::move(t));
  }
  return j;
}

LaurentPoly parse_poly(const Json& j, std::optional<std::size_t> dim) {
  array(j, "polynomial");
  if (j.empty()) {
    if (!dim) fail("cannot infer the dimension of an empty polynomial");
    return LaurentPoly(*dim);
  }
  std::optional<std::size_t> d = dim;
  LaurentPoly f;
  for (const auto& t : j) {
    const MultiIndex a = parse_index(field(t, "exp"), d);
    if (!d) {
      d = a.dim();
      f = LaurentPoly(*d);
    } else if (f.dim() == 0) {
      f = LaurentPoly(*d);
    }
    f.add_term(a, parse_complex(t));
  }
  return f;
}

Json emit_impulse(const Impulse& h) {
  Json j;
  j["dim"] = h.dim();
  Json taps = Json::array();
  for (const auto& [a, c] : h.taps()) {
    Json t;
    t["index"] = emit_index(a);
    t["re"] = c.real();
    t["im"] = c.imag();
    taps.push_back(std::move(t));
  }
  j["taps"] = std::move(taps);
  return j;
}

Impulse parse_impulse(const Json& j) {
  const std::size_t s = dimension(field(j, "dim"));
  Impulse h(s);
  for (const auto& t : array(field(j, "taps"), "taps")) {
    const MultiIndex a = parse_index(field(t, "index"), s);
    h.set(a, h.at(a) + parse_complex(t));
  }
  return h;
}

Json emit_filters(std::span<const Impulse> h) {
  Json j = Json::array();
  for (const auto& f : h) j.push_back(emit_impulse(f));
  return j;
}

std::vector<Impulse> parse_filters(const Json& j) {
  std::vector<Impulse> out;
  if (j.is_object()) {
    out.push_back(parse_impulse(j));
    return out;
  }
  for (const auto& f : array(j, "filters")) out.push_back(parse_impulse(f));
  if (out.empty()) fail("filter set is empty");
  for (const auto& f : out)
    if (f.dim() != out.front().dim()) throw DimensionMismatch("filters in different dimensions");
  return out;
}

Json emit_expseq(const ExpPolySeq& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms()) {
    Json e;
    e["theta"] = emit_point(t.theta);
    e["p"] = emit_poly(t.p);
    terms.push_back(std::move(e));
  }
  Json j;
  j["terms"] = std::move(terms);
  return j;
}

ExpPolySeq parse_expseq(const Json& j) {
  std::vector<ExpPolyTerm> terms;
  std::optional<std::size_t> dim;
  for (const auto& t : array(field(j, "terms"), "terms")) {
    Point theta = parse_point(field(t, "theta"), dim);
    dim = theta.size();
    Poly p = parse_poly(field(t, "p"), dim);
    terms.push_back({std::move(theta), std::move(p)});
  }
  if (!dim) fail("sequence has no terms");
  return ExpPolySeq(*dim, std::move(terms));
}

Json emit_spectrum(const Spectrum& spec) {
  Json zeros = Json::array();
  for (const auto& z : spec.zeros()) {
    Json e;
    e["theta"] = emit_point(z.theta());
    Json basis = Json::array();
    for (const auto& q : z.mult().basis()) basis.push_back(emit_poly(q));
    e["Q_basis"] = std::move(basis);
    zeros.push_back(std::move(e));
  }
  Json j;
  j["dim"] = spec.vars();
  j["zeros"] = std::move(zeros);
  return j;
}

Spectrum parse_spectrum(const Json& j) {
  const std::size_t s = dimension(field(j, "dim"));
  std::vector<Zero> zeros;
  for (const auto& z : array(field(j, "zeros"), "zeros")) {
    Point theta = parse_point(field(z, "theta"), s);
    std::vector<Poly> basis;
    for (const auto& q : array(field(z, "Q_basis"), "Q_basis")) basis.push_back(parse_poly(q, s));
    if (basis.empty()) fail("Q_basis must not be empty");
    zeros.emplace_back(std::move(theta), DInvariantSpace(std::move(basis)));
  }
  return Spectrum(s, std::move(zeros));
}

Json emit_dilation(const Dilation& xi) {
  Json j;
  j["Xi"] = xi.matrix();
  return j;
}

Dilation parse_dilation(const Json& j) {
  IntMatrix m;
  for (const auto& row : array(field(j, "Xi"), "Xi")) {
    std::vector<long long> r;
    for (const auto& x : array(row, "Xi row")) r.push_back(integer(x, "Xi entry"));
    m.push_back(std::move(r));
  }
  return Dilation(std::move(m));
}

Json emit_candidates(const std::vector<SubdivisionCandidate>& c) {
  Json list = Json::array();
  for (const auto& k : c) {
    Json e;
    e["theta"] = emit_point(k.theta);
    e["order"] = k.order;
    list.push_back(std::move(e));
  }
  Json j;
  j["candidates"] = std::move(list);
  return j;
}

std::vector<SubdivisionCandidate> parse_candidates(const Json& j, std::size_t dim) {
  std::vector<SubdivisionCandidate> out;
  for (const auto& e : array(field(j, "candidates"), "candidates")) {
    SubdivisionCandidate c{parse_point(field(e, "theta"), dim), integer(field(e, "order"), "order")};
    if (c.order < 0) fail("order must be nonnegative");
    out.push_back(std::move(c));
  }
  return out;
}

Json emit_eigen_spec(const EigenSpec& e) {
  Json j;
  j["theta"] = emit_point(e.theta);
  Json basis = Json::array();
  for (const auto& q : e.q_basis) basis.push_back(emit_poly(q));
  j["Q_basis"] = std::move(basis);
  j["lambda"] = emit_complex(e.lambda);
  j["alpha_h"] = emit_index(e.alpha_h);
  return j;
}

EigenSpec parse_eigen_spec(const Json& j, std::size_t dim) {
  EigenSpec e;
  e.theta = parse_point(field(j, "theta"), dim);
  e.lambda = parse_complex(field(j, "lambda"));
  if (j.contains("Q_basis")) {
    for (const auto& q : array(j["Q_basis"], "Q_basis")) e.q_basis.push_back(parse_poly(q, dim));
    if (e.q_basis.empty()) fail("Q_basis must not be empty");
  } else {
    e.q_basis.push_back(Poly::constant(dim, 1.0));
  }
  e.alpha_h = j.contains("alpha_h") ? parse_index(j["alpha_h"], dim) : MultiIndex(dim);
  return e;
}

Json emit_matrix(const linalg::Matrix& m) {
  Json j = Json::array();
  for (long r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(emit_complex(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

Json emit_window(const Window& w) {
  Json j;
  j["lower"] = emit_index(w.lower);
  j["upper"] = emit_index(w.upper);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace expkern::json_io
