#pragma once

#include "cliqueblowup/indexes.hpp"
#include "cliqueblowup/spectral.hpp"

#include <string>
#include <string_view>

namespace cliqueblowup {

/// %.17g; non-finite values become "null".
std::string format_double(double value);

/// {"order": k, "cluster_tol": t, "entries": [[value, mult], ...]}
std::string to_json(const SpectrumMultiset& sigma);

/// Inverse of to_json(SpectrumMultiset). Throws ParseError.
SpectrumMultiset spectrum_from_json(std::string_view text);

/// {"kf_star", "kemeny", "tau_float", "tau_log", "tau_exact", "route", "n", "r"}
/// plus "kf_star_exact" / "kemeny_exact" as "p/q" strings when known.
std::string to_json(const IndexReport& report);

} // namespace cliqueblowup
