#ifndef SMF_JSON_IO_HPP
#define SMF_JSON_IO_HPP

#include <json.hpp>

#include "smf/berezin.hpp"
#include "smf/mumford.hpp"
#include "smf/susydisk.hpp"

namespace smf {

using nlohmann::json;

/// Wire encodings shared by every tool verb. Grassmann terms are keyed by
/// space-separated generator ids ("" is the body) with rational string
/// values; all other encodings build on that one.

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const GrassmannElement& v);
GrassmannElement grassmann_from_json(const json& j);

json to_json(const SuperMatrix& m);
SuperMatrix supermatrix_from_json(const json& j);

json to_json(const PolySuperFunction& f);
PolySuperFunction polysuper_from_json(const json& j);

json to_json(const Box& b);
Box box_from_json(const json& j);

json to_json(const SuperLaurentSeries& s);
SuperLaurentSeries series_from_json(const json& j);

json to_json(const DiskChange& c);
DiskChange disk_change_from_json(const json& j);

json to_json(const BerSection& s);
BerSection section_from_json(const json& j);

RamondChangeData ramond_change_from_json(const json& j);
json to_json(const RamondAuditReport& r);

RamondLocalData ramond_data_from_json(const json& j);
json to_json(const RamondLocalData& d);
NSLocalData ns_data_from_json(const json& j);
json to_json(const NSLocalData& d);

json to_json(const MumfordResult& r);

/// Canonical dump: two-space indentation, sorted keys, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace smf

#endif
