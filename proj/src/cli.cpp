#include "expkern/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "expkern/json_io.hpp"

namespace expkern::cli {

namespace {

using json_io::Json;

struct Options {
  std::optional<double> tol;
  int window_pad = 0;
  std::string convention = "auto";

  Tolerance tolerance() const { return tol ? Tolerance{*tol, *tol} : Tolerance{}; }
  /// For checks whose module default is an absolute 1e-8.
  double absolute(double fallback) const { return tol ? *tol : fallback; }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void set_digest(std::string d) { digest_ = std::move(d); }

  void add(std::string name, double value, double tolerance, bool pass) {
    Json r;
    r["name"] = std::move(name);
    r["value"] = value;
    r["tolerance"] = tolerance;
    r["pass"] = pass;
    records_.push_back(std::move(r));
    pass_ = pass_ && pass;
  }
  void fail(const std::string& why) {
    error_ = why;
    pass_ = false;
  }
  bool pass() const { return pass_; }
  Json& data() { return data_; }

  Json to_json() const {
    Json j;
    j["command"] = command_;
    j["inputs_digest"] = digest_;
    j["records"] = records_;
    j["pass"] = pass_;
    if (error_) j["error"] = *error_;
    j["data"] = data_;
    return j;
  }

 private:
  std::string command_;
  std::string digest_;
  Json records_ = Json::array();
  Json data_ = Json::object();
  bool pass_ = true;
  std::optional<std::string> error_;
};

class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  Json load(const std::string& path) {
    std::string text;
    if (path == "-") {
      if (stdin_used_) throw json_io::ParseError("standard input can only be read once");
      stdin_used_ = true;
      std::ostringstream ss;
      ss << in_.rdbuf();
      text = ss.str();
    } else {
      std::ifstream f(path, std::ios::binary);
      if (!f) throw json_io::ParseError("cannot open " + path);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    bytes_ += text;
    bytes_.push_back('\0');
    return json_io::parse_text(text);
  }

  std::string digest() const { return fnv1a_hex(bytes_); }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
  std::string bytes_;
};

PThetaConvention resolve(const std::string& name) {
  if (name == "with-sigma") return PThetaConvention::with_sigma_minus;
  if (name == "without-sigma") return PThetaConvention::without_sigma_minus;
  return calibrate_convention();
}

std::string label(const std::string& base, std::initializer_list<std::pair<const char*, std::size_t>> keys) {
  std::string s = base + "[";
  bool first = true;
  for (const auto& [k, v] : keys) {
    if (!first) s += ",";
    s += std::string(k) + "=" + std::to_string(v);
    first = false;
  }
  return s + "]";
}

Json emit_polys(const std::vector<Poly>& ps) {
  Json j = Json::array();
  for (const auto& p : ps) j.push_back(json_io::emit_poly(p));
  return j;
}

void cmd_verify(Inputs& inputs, const std::string& filters_path, const std::string& spectrum_path,
                const Options& opt, Report& report) {
  const auto h = json_io::parse_filters(inputs.load(filters_path));
  const Spectrum spec = json_io::parse_spectrum(inputs.load(spectrum_path));
  if (h.front().dim() != spec.vars()) throw DimensionMismatch("filters and spectrum dimensions differ");
  if (!spec.distinct()) throw std::invalid_argument("spectrum has repeated theta values");
  const Tolerance tol = opt.tolerance();
  const PThetaConvention conv = resolve(opt.convention);
  report.data()["convention"] = to_string(conv);

  const ZeroDimReport dual = verify_zero_dim(h, spec, tol);
  Json duals = Json::array();
  for (const auto& e : dual.entries) {
    report.add(label("dual", {{"filter", e.filter}, {"zero", e.zero}, {"q", e.q}}), std::abs(e.value),
               tol.bound(e.scale), e.pass);
    Json d;
    d["filter"] = e.filter;
    d["zero"] = e.zero;
    d["q"] = json_io::emit_poly(spec.zeros()[e.zero].ortho().elements[e.q]);
    d["value"] = json_io::emit_complex(e.value);
    duals.push_back(std::move(d));
  }
  report.data()["dual"] = std::move(duals);

  Json kernel = Json::array();
  for (std::size_t z = 0; z < spec.zeros().size(); ++z) {
    const Zero& zero = spec.zeros()[z];
    const PThetaBasis p = build_p_theta(zero.mult(), zero.theta(), conv);
    Json residuals = Json::array();
    for (std::size_t k = 0; k < p.elements.size(); ++k) {
      const auto rep = kernel_residual(h, ExpPolySeq::single(zero.theta(), p.elements[k]), opt.window_pad);
      const ThetaResidual& tr = rep.per_theta.front();
      report.add(label("kernel", {{"zero", z}, {"p", k}}), tr.residual, tol.bound(tr.scale),
                 tol.accepts(tr.residual, tr.scale));
      residuals.push_back(tr.residual);
    }
    Json c;
    c["theta"] = json_io::emit_point(zero.theta());
    c["basis"] = emit_polys(p.elements);
    c["residuals"] = std::move(residuals);
    kernel.push_back(std::move(c));
  }
  report.data()["kernel"] = std::move(kernel);
}

void cmd_build_kernel(Inputs& inputs, const std::string& spectrum_path, const Options& opt, Report& report) {
  const Spectrum spec = json_io::parse_spectrum(inputs.load(spectrum_path));
  if (!spec.distinct()) throw std::invalid_argument("spectrum has repeated theta values");
  const PThetaConvention conv = resolve(opt.convention);
  report.data()["convention"] = to_string(conv);
  const double tol = opt.absolute(1e-9);

  Json kernel = Json::array();
  for (std::size_t z = 0; z < spec.zeros().size(); ++z) {
    const Zero& zero = spec.zeros()[z];
    const PThetaBasis p = build_p_theta(zero.mult(), zero.theta(), conv);
    report.add(label("dimension", {{"zero", z}}), static_cast<double>(p.elements.size()), 0.0,
               p.elements.size() == zero.dim());
    // the shift matrix at y = (1, ..., 1) is unimodular for a shift-invariant basis
    const linalg::Matrix g = shift_matrix(p, Point(spec.vars(), 1.0));
    const double det_err = std::abs(g.determinant() - Complex(1.0));
    report.add(label("shift_determinant", {{"zero", z}}), det_err, tol, det_err <= tol);

    const Window w = Window::box(spec.vars(), 0, std::max(0, p.degree())).padded(opt.window_pad);
    Json samples = Json::array();
    for (const auto& e : p.elements) {
      Json vals = Json::array();
      for (const auto& v : sample(ExpPolySeq::single(zero.theta(), e), w).values)
        vals.push_back(json_io::emit_complex(v));
      samples.push_back(std::move(vals));
    }
    Json c;
    c["theta"] = json_io::emit_point(zero.theta());
    c["basis"] = emit_polys(p.elements);
    c["window"] = json_io::emit_window(w);
    c["samples"] = std::move(samples);
    kernel.push_back(std::move(c));
  }
  report.data()["kernel"] = std::move(kernel);
}

void cmd_hermite(Inputs& inputs, const std::string& spectrum_path, const Options& opt, Report& report) {
  const Spectrum spec = json_io::parse_spectrum(inputs.load(spectrum_path));
  const FundamentalSystem fs = hermite_fundamentals(spec);
  const double tol = opt.absolute(1e-8);
  const auto m = fs.duals.rows();
  const double err =
      m == 0 ? 0.0 : (fs.duals - linalg::Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  report.add("kronecker_identity", err, tol, err <= tol);

  Json fund = Json::array();
  for (std::size_t z = 0; z < spec.zeros().size(); ++z) {
    const Zero& zero = spec.zeros()[z];
    for (std::size_t k = 0; k < fs.f[z].size(); ++k) {
      Json e;
      e["theta"] = json_io::emit_point(zero.theta());
      e["q"] = json_io::emit_poly(zero.ortho().elements[k]);
      e["f"] = json_io::emit_poly(fs.f[z][k]);
      fund.push_back(std::move(e));
    }
  }
  report.data()["degree"] = fs.degree;
  report.data()["fundamentals"] = std::move(fund);
  report.data()["duals"] = json_io::emit_matrix(fs.duals);
}

void cmd_subdivide(Inputs& inputs, const std::string& mask_path, const std::string& dilation_path,
                   const std::string& candidates_path, const Options& opt, Report& report) {
  const Impulse a = json_io::parse_impulse(inputs.load(mask_path));
  const Dilation xi = json_io::parse_dilation(inputs.load(dilation_path));
  if (xi.dim() != a.dim()) throw DimensionMismatch("mask and dilation dimensions differ");
  if (!is_expanding(xi)) throw std::invalid_argument("dilation matrix is not expanding");
  const auto cands = json_io::parse_candidates(inputs.load(candidates_path), a.dim());
  const Tolerance tol = opt.tolerance();

  Json subs = Json::array();
  for (const auto& s : subsymbols(a, xi)) {
    Json e;
    e["coset"] = json_io::emit_index(s.xi);
    e["symbol"] = json_io::emit_poly(s.symbol);
    subs.push_back(std::move(e));
  }
  report.data()["subsymbols"] = std::move(subs);

  const SubdivisionReport sr = subdivision_kernel_check(a, xi, cands, tol, opt.window_pad);
  Json list = Json::array();
  for (std::size_t i = 0; i < sr.candidates.size(); ++i) {
    const CandidateReport& c = sr.candidates[i];
    report.add(label("symmetric_zero", {{"candidate", i}}), c.symmetric.max_violation, tol.abs,
               c.symmetric.is_zero);
    report.add(label("common_subsymbol_zero", {{"candidate", i}}), c.common.max_violation, tol.abs,
               c.common.is_zero);
    report.add(label("oracle", {{"candidate", i}}), c.oracle_residual, tol.bound(c.oracle_scale), c.oracle);
    Json e;
    e["theta"] = json_io::emit_point(c.theta);
    e["order"] = c.order;
    e["zeta"] = json_io::emit_point(c.zeta);
    Json mods = Json::array();
    for (const auto& w : modulation_points(xi, c.zeta)) mods.push_back(json_io::emit_point(w));
    e["modulation_points"] = std::move(mods);
    e["max_symmetric_order"] = c.max_symmetric_order;
    e["max_common_order"] = c.max_common_order;
    e["oracle_residual"] = c.oracle_residual;
    list.push_back(std::move(e));
  }
  report.data()["candidates"] = std::move(list);
}

void cmd_eigen(Inputs& inputs, const std::string& filter_path, const std::string& spec_path,
               const Options& opt, Report& report) {
  const auto hs = json_io::parse_filters(inputs.load(filter_path));
  if (hs.size() != 1) throw std::invalid_argument("eigen expects exactly one filter");
  const Impulse& h = hs.front();
  const json_io::EigenSpec es = json_io::parse_eigen_spec(inputs.load(spec_path), h.dim());
  const DInvariantSpace q(es.q_basis);
  const Tolerance tol = opt.tolerance();
  const PThetaConvention conv = resolve(opt.convention);
  report.data()["convention"] = to_string(conv);

  const auto cond = eigen_conditions(h, es.theta, q, es.lambda, es.alpha_h, tol);
  const auto ortho = ortho_homog_basis(q);
  Json conds = Json::array();
  for (const auto& e : cond.entries) {
    report.add(label("condition", {{"q", e.q_index}}), std::abs(e.defect), tol.bound(e.scale), e.pass);
    Json c;
    c["q"] = json_io::emit_poly(ortho.elements[e.q_index]);
    c["defect"] = json_io::emit_complex(e.defect);
    conds.push_back(std::move(c));
  }
  report.data()["conditions"] = std::move(conds);

  const PThetaBasis p = build_p_theta(q, es.theta, conv);
  Json residuals = Json::array();
  for (std::size_t k = 0; k < p.elements.size(); ++k) {
    const ExpPolySeq seq = ExpPolySeq::single(es.theta, p.elements[k]);
    const double r = eigen_residual(h, es.lambda, es.alpha_h, seq, opt.window_pad);
    // magnitude of the terms that cancel, in the same normalization
    const Window w = certified_window(seq).padded(opt.window_pad);
    double pmax = 0.0;
    for (const auto& alpha : w.points()) {
      Point x(alpha.dim());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<double>(alpha[j]);
      pmax = std::max(pmax, std::abs(eval(p.elements[k], x)));
    }
    const double scale = (h.norm1() + std::abs(es.lambda)) * (1.0 + pmax);
    report.add(label("residual", {{"p", k}}), r, tol.bound(scale), tol.accepts(r, scale));
    residuals.push_back(r);
  }
  report.data()["basis"] = emit_polys(p.elements);
  report.data()["residuals"] = std::move(residuals);
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernels of multivariate convolution and subdivision operators", "expkern"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::string> paths;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Absolute and relative tolerance for every check")
        ->check(CLI::PositiveNumber);
    sub->add_option("--window-pad", opt.window_pad, "Grow the certified window by this many points")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--convention", opt.convention, "P_theta convention")
        ->check(CLI::IsMember({"auto", "with-sigma", "without-sigma"}));
  };
  auto add_sub = [&](const char* name, const char* help, int files) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", paths, "JSON inputs (- for stdin)")->required()->expected(files);
    add_common(sub);
  };
  add_sub("verify", "Check dual conditions and certify the kernel of a filter set: <filters> <spectrum>", 2);
  add_sub("build-kernel", "P_theta bases and samples for a spectrum: <spectrum>", 1);
  add_sub("hermite", "Hermite fundamental polynomials of a spectrum: <spectrum>", 1);
  add_sub("subdivide", "Subdivision kernel certificates: <mask> <dilation> <candidates>", 3);
  add_sub("eigen", "Eigen-sequence conditions and residuals: <filter> <eigen-spec>", 2);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Inputs inputs(in);
  Report report(command);
  try {
    if (command == "verify") cmd_verify(inputs, paths[0], paths[1], opt, report);
    else if (command == "build-kernel") cmd_build_kernel(inputs, paths[0], opt, report);
    else if (command == "hermite") cmd_hermite(inputs, paths[0], opt, report);
    else if (command == "subdivide") cmd_subdivide(inputs, paths[0], paths[1], paths[2], opt, report);
    else cmd_eigen(inputs, paths[0], paths[1], opt, report);
  } catch (const VerificationError& e) {
    report.set_digest(inputs.digest());
    report.fail(e.what());
    out << json_io::dump(report.to_json());
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  report.set_digest(inputs.digest());
  out << json_io::dump(report.to_json());
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace expkern::cli
