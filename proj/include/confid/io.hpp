#pragma once

// File formats: CSV curve dumps (`theta,cdf`, bit-exact round trip),
// JSON evidence files describing sources, and JSON game reports.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "confid/curve.hpp"
#include "confid/game.hpp"

namespace confid {

// One row per grid node, doubles printed with shortest round-trip
// formatting so dump -> load -> dump is byte-identical.
void dump_curve_csv(const SignificanceCurve& curve, std::ostream& out);
SignificanceCurve load_curve_csv(std::istream& in,
                                 std::string provenance = "loaded");

// Evidence file: {"sources": [...], "grid": {"min","max","points"}?}.
// Builds one curve per source record; kinds and their fields:
//   normal_sample      data[], sigma?   (sigma present: known-sigma normal,
//                                        absent: Student t pivot)
//   summary_t          n, mean, sd
//   subjective_normal  mean, sd
//   elicited_pvalues   points[[theta,p],...]
//   elicited_intervals median, entries[[level,lo,hi],...]
//   hypothetical_data  model{family,sigma?}, data[]
//   posterior          points[[theta,p],...], matching
struct EvidenceFile {
  std::vector<SignificanceCurve> curves;
  bool has_grid = false;
  double grid_min = 0.0;
  double grid_max = 0.0;
  int grid_points = 0;
};

EvidenceFile parse_evidence(const nlohmann::json& doc);
EvidenceFile load_evidence_file(const std::string& path);

nlohmann::ordered_json game_report_json(const GameReport& report);

}  // namespace confid
