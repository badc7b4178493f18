#pragma once

// Text serialization: shortest round-trip decimals, CSV tables and JSON
// documents for samples, spectra, discs and boundary curves.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stdisc/circle.hpp"
#include "stdisc/geometry.hpp"

namespace stdisc {

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double x);

/// CSV with header `theta,re,im`.
std::string samples_csv(const ComplexSamples& s);
std::string samples_csv(const RealSamples& s);

/// Reads the `theta,re,im` format. The row count must be a valid grid size and
/// theta must match the uniform grid to 1e-9.
ComplexSamples read_samples_csv(std::string_view text);

/// JSON array of [re, im] pairs.
nlohmann::json samples_json(const ComplexSamples& s);
nlohmann::json samples_json(const RealSamples& s);

/// JSON array of {"k": k, "re": ..., "im": ...}, ordered by k.
nlohmann::json spectrum_json(const FourierSpectrum& spec);

nlohmann::json point_json(Point2 p);  ///< [re1, im1, re2, im2]
Point2 point_from_json(const nlohmann::json& j);

/// {"p": [..4..], "z": [..4..], "R": R, "C": [re, im]}
nlohmann::json disc_json(const StationaryDisc& d);
StationaryDisc disc_from_json(const nlohmann::json& j);

/// CSV with header `theta,z1_re,z1_im,z2_re,z2_im,zeta_re,zeta_im`.
std::string curve_csv(const CircleGrid& grid, std::span<const Point2> points, std::span<const cplx> zeta);

/// Parses "a,b,c,..." into doubles; throws InvalidArgument naming `field`.
std::vector<double> parse_number_list(std::string_view text, std::string_view field);

}  // namespace stdisc
