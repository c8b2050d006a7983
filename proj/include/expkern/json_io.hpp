#pragma once

// JSON encodings of the library types. Emitters are deterministic (terms in
// graded-lex order, fixed key order, shortest round-trip doubles); parsers
// validate shape and dimensions and throw ParseError (an invalid_argument).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "expkern/filters.hpp"
#include "expkern/spectrum.hpp"
#include "expkern/subdivision.hpp"

namespace expkern::json_io {

using Json = nlohmann::ordered_json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json emit_complex(Complex c);
Complex parse_complex(const Json& j);

Json emit_point(std::span<const Complex> p);
Point parse_point(const Json& j, std::optional<std::size_t> dim = std::nullopt);

Json emit_index(const MultiIndex& a);
MultiIndex parse_index(const Json& j, std::optional<std::size_t> dim = std::nullopt);

Json emit_poly(const LaurentPoly& f);
/// The empty array has no intrinsic dimension, so dim is required for it.
LaurentPoly parse_poly(const Json& j, std::optional<std::size_t> dim = std::nullopt);

Json emit_impulse(const Impulse& h);
Impulse parse_impulse(const Json& j);

/// A filter set: an array of impulses, or one impulse object.
Json emit_filters(std::span<const Impulse> h);
std::vector<Impulse> parse_filters(const Json& j);

Json emit_expseq(const ExpPolySeq& c);
ExpPolySeq parse_expseq(const Json& j);

Json emit_spectrum(const Spectrum& spec);
Spectrum parse_spectrum(const Json& j);

Json emit_dilation(const Dilation& xi);
Dilation parse_dilation(const Json& j);

/// {"candidates": [{"theta": point, "order": k}, ...]}
Json emit_candidates(const std::vector<SubdivisionCandidate>& c);
std::vector<SubdivisionCandidate> parse_candidates(const Json& j, std::size_t dim);

struct EigenSpec {
  Point theta;
  /// Defaults to span{1}.
  std::vector<Poly> q_basis;
  Complex lambda;
  /// Defaults to 0.
  MultiIndex alpha_h;
};

/// {"theta": point, "Q_basis": [poly, ...], "lambda": complex, "alpha_h": [int, ...]}
Json emit_eigen_spec(const EigenSpec& e);
EigenSpec parse_eigen_spec(const Json& j, std::size_t dim);

Json emit_matrix(const linalg::Matrix& m);
Json emit_window(const Window& w);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
Json parse_text(const std::string& text);

}  // namespace expkern::json_io
