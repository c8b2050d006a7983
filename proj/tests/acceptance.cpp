// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
//
//   acceptance <expkern binary> <fixture dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <sstream>

#include "cli_cases.hpp"
#include "support.hpp"

#include "expkern/json_io.hpp"
#include "expkern/newton.hpp"
#include "expkern/spectrum.hpp"
#include "expkern/subdivision.hpp"

using namespace testing;
namespace jio = expkern::json_io;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Check = std::function<void(Outcome&)>;

// ---------------------------------------------------------------- helpers

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a)
    if (span_residual(b, p) > tol) return false;
  for (const auto& p : b)
    if (span_residual(a, p) > tol) return false;
  return true;
}

DInvariantSpace random_q(Rng& rng, std::size_t s, std::size_t max_dim) {
  if (uniform_int(rng, 0, 1) == 0 || max_dim < 3)
    return DInvariantSpace::lower_set(s, random_lower_set(rng, s, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)))));
  return power_space(random_linear(rng, s), 2);
}

struct Case {
  Spectrum spec;
  std::vector<Impulse> filters;
  FundamentalSystem fund;
};

/// Filters spanning the degree-(hermite + 1) part of the ideal.
Case make_case(Spectrum spec, std::size_t max_filters) {
  auto fund = hermite_fundamentals(spec);
  auto all = ideal_complement_basis(spec, fund.degree + 1);
  if (all.size() > max_filters) all.resize(max_filters);
  return Case{std::move(spec), std::move(all), std::move(fund)};
}

/// Samples of each sequence on w, one column per sequence.
linalg::Matrix sample_matrix(const std::vector<ExpPolySeq>& seqs, const Window& w) {
  linalg::Matrix m(static_cast<long>(w.size()), static_cast<long>(seqs.size()));
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    const auto v = sample(seqs[k], w);
    for (std::size_t i = 0; i < w.size(); ++i) m(static_cast<long>(i), static_cast<long>(k)) = v.values[i];
  }
  return m;
}

double max_kernel_residual(std::span<const Impulse> h, const Zero& zero, PThetaConvention conv) {
  double worst = 0.0;
  for (const auto& p : build_p_theta(zero.mult(), zero.theta(), conv).elements)
    worst = std::max(worst, kernel_residual(h, ExpPolySeq::single(zero.theta(), p)).max_residual);
  return worst;
}

// ---------------------------------------------------------------- criteria

void worked_example(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t s = 2;
  const Poly one = Poly::constant(s, 1.0), x = Poly::variable(s, 0), y = Poly::variable(s, 1);
  const Poly l = x + y * Complex(2.0);
  const double e0 = distance(L_op(one), one);
  const double e1 = distance(L_op(l), l);
  const double e2 = distance(L_op(l * l), l * l + x + y * Complex(4.0));
  o.require(std::max({e0, e1, e2}) <= 1e-12, "L on the example space");
  const DInvariantSpace q({one, x + y, (x + y) * (x + y)});
  const auto p = build_p_theta(q, {1.0, 2.0}, PThetaConvention::without_sigma_minus);
  o.require(same_span(p.elements, {one, l, l * l - x - y * Complex(4.0)}, 1e-12), "P_theta span");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 1.0, "runtime");
  o.detail << "L error " << std::max({e0, e1, e2});
}

std::vector<Case> forward_cases() {
  Rng rng(2024);
  std::vector<Case> out;
  for (int t = 0; t < 60; ++t) {
    const std::size_t s = static_cast<std::size_t>(1 + t % 3);
    std::vector<Zero> zeros{Zero(annulus_point(rng, s), random_q(rng, s, 6))};
    if (t % 4 == 3) zeros.emplace_back(annulus_point(rng, s), DInvariantSpace::fat_point(s, 0));
    out.push_back(make_case(Spectrum(s, std::move(zeros)), 4));
  }
  return out;
}

void annihilation_forward(Outcome& o, const std::vector<Case>& cases) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& c : cases)
    for (const auto& zero : c.spec.zeros()) worst = std::max(worst, max_kernel_residual(c.filters, zero, kDefaultConvention));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(cases.size() >= 50, "case count");
  o.require(worst <= 1e-8, "residual bound");
  o.require(secs < 30.0, "runtime");
  o.detail << cases.size() << " cases, max residual " << worst << ", " << secs << " s";
}

void annihilation_converse(Outcome& o, const std::vector<Case>& cases) {
  Rng rng(2025);
  const double eps = 1e-2;
  double weakest = std::numeric_limits<double>::infinity();
  for (const auto& c : cases) {
    const std::size_t z = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(c.spec.zeros().size()) - 1));
    const Zero& zero = c.spec.zeros()[z];
    const std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(zero.dim()) - 1));
    // shifts exactly one dual condition of the first filter by eps
    std::vector<Impulse> h = c.filters;
    h.front() = Impulse::from_symbol(h.front().tap_poly() + c.fund.f[z][k] * Complex(eps));
    const double r = max_kernel_residual(h, zero, kDefaultConvention);
    weakest = std::min(weakest, r);
  }
  o.require(weakest >= 1e-4, "perturbed residual");
  o.detail << "min perturbed residual " << weakest;
}

void kernel_one_dim(Outcome& o) {
  const Poly z = Poly::variable(1, 0), one = Poly::constant(1, 1.0);
  const Poly a = z - one * Complex(2.0), b = z - one * Complex(3.0);
  const std::vector<Impulse> h{Impulse::from_symbol(a * a * b)};
  const std::vector<ExpPolySeq> seqs{ExpPolySeq::single({0.5}, one), ExpPolySeq::single({0.5}, z),
                                     ExpPolySeq::single({1.0 / 3.0}, one)};
  double worst = 0.0;
  for (const auto& c : seqs) worst = std::max(worst, kernel_residual(h, c).max_residual);
  const double probe = kernel_residual(h, ExpPolySeq::single({0.5}, z * z)).max_residual;
  // independence needs room for all three: certified window grown by their count
  const Window w = Window::box(1, 0, 1).padded(3);
  const int rank = linalg::numerical_rank(sample_matrix(seqs, w), 1e-8);
  o.require(worst <= 1e-8, "kernel residual");
  o.require(probe >= 1e-3, "probe residual");
  o.require(rank == 3, "rank");
  o.detail << "max residual " << worst << ", probe " << probe << ", rank " << rank;
}

std::vector<Spectrum> dimension_spectra() {
  Rng rng(2026);
  std::vector<Spectrum> out;
  while (out.size() < 12) {
    const std::size_t nz = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    std::vector<Zero> zeros;
    std::size_t left = 6;
    for (std::size_t i = 0; i < nz; ++i) {
      const std::size_t room = left - (nz - i - 1);
      zeros.emplace_back(annulus_point(rng, 2), random_q(rng, 2, std::min<std::size_t>(room, 4)));
      left -= zeros.back().dim();
      if (left < nz - i - 1) break;
    }
    if (zeros.size() != nz) continue;
    Spectrum spec(2, std::move(zeros));
    if (spec.total_multiplicity() <= 6 && spec.min_separation() > 0.2) out.push_back(std::move(spec));
  }
  return out;
}

void dimension_check(Outcome& o, const std::vector<Spectrum>& spectra) {
  for (const auto& spec : spectra) {
    const Case c = make_case(spec, 64);
    const std::size_t total = spec.total_multiplicity();
    std::vector<KernelComponent> kernel;
    try {
      kernel = kernel_basis(c.filters, spec);
    } catch (const VerificationError& e) {
      o.require(false, std::string("kernel certificate: ") + e.what());
      continue;
    }
    const auto seqs = kernel_sequences(kernel);
    o.require(seqs.size() == total, "sequence count");
    int deg = 0;
    for (const auto& s : seqs) deg = std::max(deg, s.degree());
    const Window w = Window::box(2, 0, deg).padded(static_cast<int>(total));
    o.require(linalg::numerical_rank(sample_matrix(seqs, w), 1e-8) == static_cast<int>(total), "independence");
    const int d0 = c.fund.degree + 1;
    for (int d = d0; d <= d0 + 4; ++d)
      o.require(quotient_dim_estimate(c.filters, d) == static_cast<int>(total), "quotient estimate");
  }
  o.detail << spectra.size() << " spectra";
}

void hermite_identity(Outcome& o, const std::vector<Spectrum>& spectra) {
  double worst = 0.0;
  for (const auto& spec : spectra) {
    const auto fs = hermite_fundamentals(spec);
    const auto m = fs.duals.rows();
    worst = std::max(worst, (fs.duals - linalg::Matrix::Identity(m, m)).cwiseAbs().maxCoeff());
  }
  o.require(worst <= 1e-8, "dual matrix");
  o.detail << "max deviation from identity " << worst;
}

void unimodular(Outcome& o) {
  Rng rng(2027);
  const std::size_t s = 2;
  const Poly one = Poly::constant(s, 1.0), x = Poly::variable(s, 0), y = Poly::variable(s, 1);
  std::vector<PThetaBasis> bases{build_p_theta(DInvariantSpace({one, x + y, (x + y) * (x + y)}), {1.0, 2.0})};
  for (int t = 0; t < 5; ++t) {
    const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    bases.push_back(build_p_theta(
        DInvariantSpace::lower_set(dim, random_lower_set(rng, dim, static_cast<std::size_t>(uniform_int(rng, 2, 6)))),
        annulus_point(rng, dim)));
  }
  double worst = 0.0;
  for (const auto& p : bases) {
    const auto n = static_cast<long>(p.elements.size());
    const auto g0 = shift_matrix(p, Point(p.theta.size(), 0.0));
    o.require((g0 - linalg::Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12, "G(0) = I");
    for (int k = 0; k < 20; ++k) {
      Point yv(p.theta.size());
      for (auto& c : yv) c = random_complex(rng, 2.0);
      worst = std::max(worst, std::abs(shift_matrix(p, yv).determinant() - Complex(1.0)));
    }
  }
  o.require(worst <= 1e-9, "determinant");
  o.detail << "max |det G - 1| " << worst;
}

Impulse from_subsymbols(const Dilation& xi, const std::vector<Poly>& subs) {
  const auto reps = coset_reps(xi);
  Impulse a(xi.dim());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& [alpha, c] : subs[i].terms()) a.set(reps[i] + xi.apply(alpha), c);
  return a;
}

void subdivision_suite(Outcome& o) {
  Rng rng(2028);
  const std::vector<Dilation> dils{Dilation(IntMatrix{{2, 0}, {0, 2}}), Dilation(IntMatrix{{1, 1}, {1, -1}}), Dilation(IntMatrix{{2, 0}, {0, 3}})};
  // (a) symbol/subsymbol identities
  double recon = 0.0, modul = 0.0;
  for (const auto& xi : dils) {
    const auto dual = coset_reps(xi, true);
    const auto mods = modulation_vectors(xi);
    for (int t = 0; t < 50; ++t) {
      Impulse a = Impulse::from_symbol(random_laurent(rng, 2, -2, 2, uniform_int(rng, 1, 25)));
      if (a.is_zero()) a.set({0, 0}, 1.0);
      const Poly sym = symbol(a);
      const Point z = annulus_point(rng, 2, 0.7, 1.4);
      const Point zx = z_pow_xi(z, xi);
      Complex sum = 0.0;
      for (const auto& sub : subsymbols(a, xi)) {
        const Complex direct = exp_term(z, sub.xi) * eval(sub.symbol, zx);
        sum += direct;
        Complex avg = 0.0;
        for (std::size_t k = 0; k < dual.size(); ++k) {
          Point wz{mods[k][0] * z[0], mods[k][1] * z[1]};
          avg += std::conj(modulation_phase(xi, sub.xi, dual[k])) * eval(sym, wz);
        }
        avg /= static_cast<double>(xi.cosets());
        modul = std::max(modul, std::abs(avg - direct) / (1.0 + eval_scale(sym, z)));
      }
      recon = std::max(recon, std::abs(sum - eval(sym, z)) / (1.0 + eval_scale(sym, z)));
    }
  }
  o.require(recon <= 1e-10 && modul <= 1e-10, "(a) subsymbol identities");
  // (b) unit roots
  double roots = 0.0;
  for (const auto& xi : dils)
    for (const auto& w : modulation_vectors(xi))
      for (const auto& c : z_pow_xi(w, xi)) roots = std::max(roots, std::abs(c - Complex(1.0)));
  o.require(roots <= 1e-12, "(b) unit roots");
  // (c) worked masks
  const Dilation two(IntMatrix{{2}});
  const Poly z = Poly::variable(1, 0), one = Poly::constant(1, 1.0);
  const Poly base = one - z * z;
  o.require(subdivision_kernel_check(Impulse::from_symbol(base), two, {{{1.0}, 0}}).pass, "(c) 1 - z^2");
  o.require(subdivision_kernel_check(Impulse::from_symbol(base * base), two, {{{1.0}, 1}}).pass, "(c) (1 - z^2)^2");
  const auto hat = subdivision_kernel_check(Impulse::from_symbol((one + z) * (one + z) * Complex(0.5)), two, {{{1.0}, 0}});
  o.require(!hat.pass && hat.candidates[0].consistent, "(c) (1 + z)^2 / 2 rejected");
  // (d) symmetric zeros versus common subsymbol zeros
  int disagree = 0;
  for (int t = 0; t < 50; ++t) {
    const Dilation& xi = dils[static_cast<std::size_t>(t % 3)];
    const Point zeta = annulus_point(rng, 2, 0.7, 1.4);
    const Point p = z_pow_xi(zeta, xi);
    const Poly y1 = Poly::variable(2, 0) - Poly::constant(2, p[0]);
    const Poly y2 = Poly::variable(2, 1) - Poly::constant(2, p[1]);
    std::vector<Poly> subs;
    for (long long k = 0; k < xi.cosets(); ++k)
      subs.push_back(random_poly(rng, 2, 1, 2) * y1 + random_poly(rng, 2, 1, 2) * y2);
    const bool miss = t % 2 == 1;
    if (miss) subs[static_cast<std::size_t>(t % xi.cosets())] += Poly::constant(2, 1e-3);
    const Impulse a = from_subsymbols(xi, subs);
    const bool sym = is_symmetric_zero(a, xi, zeta, 0).is_zero;
    const bool common = is_common_subsymbol_zero(a, xi, p, 0).is_zero;
    if (sym != common || sym == miss) ++disagree;
  }
  o.require(disagree == 0, "(d) agreement");
  o.detail << "identities " << std::max(recon, modul) << ", unit roots " << roots << ", disagreements " << disagree;
}

void apolar_identities(Outcome& o) {
  Rng rng(2029);
  double adj = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    adj = std::max(adj, adjoint_check(random_poly(rng, s, 2, 3), random_poly(rng, s, 5, 8), random_poly(rng, s, 3, 6)));
  }
  std::vector<DInvariantSpace> spaces;
  for (std::size_t s = 1; s <= 3; ++s)
    for (int k = 0; k <= 2; ++k) spaces.push_back(DInvariantSpace::fat_point(s, k));
  for (int t = 0; t < 20; ++t) {
    const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    spaces.push_back(random_q(rng, s, 6));
  }
  double expand = 0.0, taylor = 0.0;
  for (const auto& space : spaces) {
    Poly f(space.vars());
    for (const auto& b : space.basis()) f += b * random_complex(rng);
    if (f.is_zero()) continue;
    expand = std::max(expand, ortho_expansion_residual(ortho_homog_basis(space), f));
    taylor = std::max(taylor, taylor_identity_residual(space, f, annulus_point(rng, space.vars()),
                                                       annulus_point(rng, space.vars())));
  }
  o.require(adj <= 1e-10, "adjunction");
  o.require(expand <= 1e-10 && taylor <= 1e-10, "expansions");
  o.detail << "adjunction " << adj << ", expansion " << expand << ", translation " << taylor;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::pair<int, std::string> run_binary(const std::string& bin, const std::vector<std::string>& args) {
  std::string cmd = quote(bin);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void cli_corpus(Outcome& o, const std::string& bin, const std::string& dir) {
  const auto cases = load_cli_cases(dir);
  int checked = 0;
  for (const auto& c : cases) {
    const auto [code, out] = run_binary(bin, c.args);
    const auto [code2, out2] = run_binary(bin, c.args);
    o.require(code == c.exit, c.name + " exit code " + std::to_string(code));
    o.require(code2 == code && out2 == out, c.name + " determinism");
    if (code != 2) {
      try {
        o.require(jio::dump(jio::parse_text(out)) == out, c.name + " report round-trip");
      } catch (const std::exception&) {
        o.require(false, c.name + " report is not JSON");
      }
    }
    ++checked;
  }
  // input payloads round-trip through the library encoders
  const auto text = [&](const std::string& name) {
    std::ifstream f(dir + "/" + name);
    std::ostringstream ss;
    ss << f.rdbuf();
    return jio::parse_text(ss.str());
  };
  const auto stable = [&](const jio::Json& once, const jio::Json& twice) { return jio::dump(once) == jio::dump(twice); };
  for (const char* n : {"spectrum_example.json", "spectrum_cubic.json", "spectrum_fat2d.json", "spectrum_empty.json"}) {
    const auto j = jio::emit_spectrum(jio::parse_spectrum(text(n)));
    o.require(stable(j, jio::emit_spectrum(jio::parse_spectrum(j))), std::string(n) + " round-trip");
  }
  for (const char* n : {"filters_cubic.json", "filters_diff2d.json"}) {
    const auto j = jio::emit_filters(jio::parse_filters(text(n)));
    o.require(stable(j, jio::emit_filters(jio::parse_filters(j))), std::string(n) + " round-trip");
  }
  for (const char* n : {"mask_hat.json", "mask_delta2d.json"}) {
    const auto j = jio::emit_impulse(jio::parse_impulse(text(n)));
    o.require(stable(j, jio::emit_impulse(jio::parse_impulse(j))), std::string(n) + " round-trip");
  }
  const auto d = jio::emit_dilation(jio::parse_dilation(text("dilation_quincunx.json")));
  o.require(stable(d, jio::emit_dilation(jio::parse_dilation(d))), "dilation round-trip");
  o.detail << checked << " fixture runs";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <expkern binary> <fixture dir>\n";
    return 2;
  }
  const std::string bin = argv[1], dir = argv[2];
  const auto start = std::chrono::steady_clock::now();

  const auto forward = forward_cases();
  const auto spectra = dimension_spectra();
  const std::vector<std::pair<std::string, Check>> criteria{
      {"worked example: L and the P_theta span", worked_example},
      {"randomized annihilation of P_theta e_theta", [&](Outcome& o) { annihilation_forward(o, forward); }},
      {"perturbed dual condition is detected", [&](Outcome& o) { annihilation_converse(o, forward); }},
      {"one-dimensional kernel of (z-2)^2 (z-3)", kernel_one_dim},
      {"kernel dimension equals total multiplicity", [&](Outcome& o) { dimension_check(o, spectra); }},
      {"Hermite fundamentals are Kronecker dual", [&](Outcome& o) { hermite_identity(o, spectra); }},
      {"shift matrices are unimodular", unimodular},
      {"subdivision identities and kernels", subdivision_suite},
      {"apolar identities", apolar_identities},
      {"command-line fixture corpus", [&](Outcome& o) { cli_corpus(o, bin, dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s  %s (%.2f s): %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                secs, o.detail.str().c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.2f s, %d of %zu failed\n", total, failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
