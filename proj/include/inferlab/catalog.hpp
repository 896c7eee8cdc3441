#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "inferlab/interaction.hpp"
#include "inferlab/restrictions.hpp"

namespace inferlab::catalog {

/// Named parameters; set-valued ones (`elements`, `remove`) use the whole
/// list, scalar ones (`n`, `m`) the single entry.
using Params = std::map<std::string, std::vector<Natural>>;

/// Language ids: `finite(elements)`, `cofinite(remove)`, `segment(n)`
/// = {0..n}, `nat`, `empty`, `streamX`, `streamY(n)`, `streamZ(n,m)`,
/// `evenX`, `evenY(n)`, `evenZ(n,m)`. Z requires n < m. Throws
/// std::invalid_argument on unknown ids or bad parameters.
UPSet language(std::string_view id, const Params& params = {});

/// Parses `n=1,m=2` or `remove=1;3` style text; values in a list are
/// separated by ';'.
Params parse_params(std::string_view text);
std::string params_to_string(const Params& params);

struct LanguageInstance {
  std::string id;
  Params params;
  UPSet set;

  std::string describe() const;
};

/// Sweep limits for materializing a family.
struct SweepBounds {
  /// Finite and cofinite families use subsets of {0, ..., value_bound - 1}.
  Natural value_bound = 6;
  std::size_t max_size = 4;
  /// Y_n and segments use n <= n_max; Z_{n,m} uses n < m <= m_max.
  Natural n_max = 8;
  Natural m_max = 12;
};

/// Family ids: `finite`, `cofinite`, `segments_or_N`, `N_or_finite`,
/// `streamXYZ`, `evenXYZ`.
std::vector<LanguageInstance> family(std::string_view id, const SweepBounds& bounds = {});

/// Learner ids: `FIN_POS`, `COFINITE`, `MAXPOS`, `SEGMENT`, `STREAM_MON`,
/// `EVEN_DUALMON`, `N_OR_FIN`, plus `CONST_EMPTY`, `CONST_N`, `MEMORIZER`
/// (fresh label per distinct content) and `ITER_POS` (iterative).
Learner learner(std::string_view id);

/// Sd learner that always conjectures `target` under one label.
Learner constant_learner(const UPSet& target);

struct LearnerInfo {
  std::string id;
  Interface interface;
  std::string family;
  std::vector<Restriction> satisfies;
  std::vector<Restriction> separated_from;
  std::string note;
};

struct FamilyInfo {
  std::string id;
  std::string params;
  std::string note;
};

const std::vector<LearnerInfo>& learners();
const std::vector<FamilyInfo>& families();

}  // namespace inferlab::catalog
