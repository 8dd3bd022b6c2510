#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lab/cayley.hpp"
#include "lab/group.hpp"
#include "lab/partitions.hpp"
#include "lab/poincare.hpp"
#include "lab/spectral.hpp"

namespace lab {

// All theorem-constant knobs in one block; echoed verbatim into every report.
struct Constants {
  double a_pad = 16.0;        // padding lemma constant A
  double k_cover = 4.0;       // cover count exponent K
  double k_mult = 4.0;        // intersection multiplicity exponent K'
  double k_ksc = 16.0;        // Poincare vs c^3 prefactor
  double meassym = 8.0;       // ball-mass symmetry bound prefactor
  double k_rep = 4.0;         // representation report exponent
  double minmax_tripwire = 1e4;
  double tol_cluster = 0.0;   // 0 = auto
};

struct AnalyzeOptions {
  int cert_k = 2;
  double delta = 0.0;         // 0 = halving search
  int samples = 400;
  uint64_t seed = 1;
  Constants constants;
};

nlohmann::json constants_to_json(const Constants& c);

// Full pipeline over one group spec; the report carries every asserted
// inequality with both sides and a pass flag, plus "all_pass".
nlohmann::json analyze_group(const GroupSpec& spec, const AnalyzeOptions& opt);

// Report with the "timing" field removed, for determinism comparisons.
nlohmann::json strip_timing(nlohmann::json report);

nlohmann::json dump_partition(const RandomPartition& p);

// Named invariant suites over a list of (name, group spec json) entries.
nlohmann::json verify_suite(const std::string& suite,
                            const std::vector<std::pair<std::string, nlohmann::json>>& zoo,
                            const AnalyzeOptions& opt);

// CSV sidecars.
std::string ball_profile_csv(const DoublingProfile& prof);
std::string spectrum_csv(const Spectrum& spec);
std::string poincare_csv(const PoincareEstimate& est);
std::string padding_csv(const PaddingReport& rep);

}  // namespace lab
