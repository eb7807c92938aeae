#include "indyn/simulate.hpp"

#include "indyn/goldfish.hpp"
#include "indyn/sinh_gordon.hpp"
#include "indyn/spectral.hpp"

namespace indyn {

WorldLineSet simulate(const ScenarioConfig& config) {
  const ScenarioConfig checked = validate_scenario(config);
  switch (checked.model) {
    case Model::CalogeroMoser:
    case Model::RuijsenaarsSchneider:
      return spectral::simulate_spectral(checked);
    case Model::Goldfish:
      return goldfish::simulate_goldfish(checked);
    case Model::SinhGordon:
      return sg::simulate_sg(checked);
  }
  return {};
}

}  // namespace indyn
