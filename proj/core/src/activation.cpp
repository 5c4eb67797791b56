#include "lgcn/activation.hpp"

#include <charconv>
#include <sstream>

#include "lgcn/errors.hpp"

namespace lgcn {

Activation Activation::leaky_relu(double slope) {
  detail::require(slope > 0.0 && slope < 1.0, "Activation: leaky_relu slope must lie in (0, 1)");
  return {Kind::kLeakyRelu, slope};
}

Activation Activation::parse(std::string_view tag) {
  if (tag == "relu") return relu();
  if (tag == "leaky_relu") return leaky_relu(0.2);
  constexpr std::string_view prefix = "leaky_relu:";
  if (tag.starts_with(prefix)) {
    const std::string rest(tag.substr(prefix.size()));
    std::size_t used = 0;
    double slope = 0.0;
    try {
      slope = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && used > 0) return leaky_relu(slope);
  }
  throw ContractViolation("Activation: unsupported non-linearity '" + std::string(tag) + "'");
}

std::string Activation::tag() const {
  if (kind == Kind::kRelu) return "relu";
  std::ostringstream os;
  os << "leaky_relu:" << slope;
  return os.str();
}

}  // namespace lgcn
