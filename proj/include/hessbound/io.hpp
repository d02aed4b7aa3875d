#pragma once

// JSON and CSV serialization. Every floating-point value is written with 12
// significant digits.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hessbound/bounds.hpp"
#include "hessbound/geometry.hpp"
#include "hessbound/radial.hpp"
#include "hessbound/sweep.hpp"

namespace hessbound::io {

using nlohmann::json;

/// Value rounded to 12 significant digits (round trip through %.12g).
double round12(double v);
std::string format12(double v);

/// {"type":"polygon","vertices":[[x,y],...]},
/// {"type":"polytope","vertices":[[x,y,z],...]} or
/// {"type":"ball","dim":n,"radius":R}. Throws InputError on anything else.
ConvexBody parse_body(const json& j);
ConvexBody load_body(const std::string& path);
json body_to_json(const ConvexBody& body);

json quermass_json(const ConvexBody& body);
json rayleigh_json(const RayleighResult& r);
json report_json(const BoundReport& r);

/// t,W0,...,Wn,event with one row per sample.
void write_sweep_csv(std::ostream& out, const InnerParallelSweep& sw);
/// r,phi,dphi on the profile grid.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

/// Header of the corpus row form.
std::string report_csv_header();
std::string report_csv_row(std::size_t index, std::uint64_t seed, const BoundReport& r, const std::string& errors);

/// Dumps with two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace hessbound::io
