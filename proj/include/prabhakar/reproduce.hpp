#ifndef PRABHAKAR_REPRODUCE_HPP_
#define PRABHAKAR_REPRODUCE_HPP_

#include <string>
#include <vector>

namespace prabhakar::reproduce {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double observed = 0.0;   // worst measured error/margin for the criterion
  double threshold = 0.0;  // the tolerance it is held against
  std::string detail;
};

// Criteria 1..10 of the verification battery. Deterministic: fixed seeds,
// fixed grids, fixed field ordering.
std::vector<CriterionResult> run_criteria();

// Byte-determinism criterion (11): builds the battery twice and compares
// the serialized summaries.
CriterionResult determinism_criterion(const std::vector<CriterionResult>& first);

// Criteria 1..11.
std::vector<CriterionResult> run_all();

std::string summary_json(const std::vector<CriterionResult>& results);

}  // namespace prabhakar::reproduce

#endif  // PRABHAKAR_REPRODUCE_HPP_
