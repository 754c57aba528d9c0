#include "fakefeat/model.hpp"

#include <cmath>
#include <string>

namespace fakefeat {

ProblemConfig validate_config(const ProblemConfig& cfg) {
    if (cfg.n < 1)
        throw DimensionError("n must be >= 1, got " + std::to_string(cfg.n));
    if (cfg.p_fake < 0)
        throw DimensionError("p_fake must be >= 0, got " + std::to_string(cfg.p_fake));
    if (cfg.p_included < 0)
        throw DimensionError("p_included must be >= 0, got " + std::to_string(cfg.p_included));
    if (cfg.p_missing < 0)
        throw DimensionError("p_missing must be >= 0, got " + std::to_string(cfg.p_missing));
    if (cfg.p_system() < 1)
        throw DimensionError("p_included + p_missing must be >= 1");
    if (!(cfg.sigma_v >= 0.0))
        throw NegativeParameterError("sigma_v must be >= 0");
    if (!(cfg.power >= 0.0))
        throw NegativeParameterError("power must be >= 0");
    if (!(cfg.lambda >= 0.0))
        throw NegativeParameterError("lambda must be >= 0");
    if (!(cfg.r_s >= 0.0 && cfg.r_s <= 1.0))
        throw PowerError("r_s must lie in [0, 1]");
    if (cfg.p_missing == 0 && cfg.r_s != 1.0)
        throw PowerError("p_missing = 0 requires r_s = 1 (no power may go to an empty block)");
    if (cfg.p_included == 0 && cfg.r_s != 0.0)
        throw PowerError("p_included = 0 requires r_s = 0 (no power may go to an empty block)");
    return cfg;
}

GroundTruth make_ground_truth(const ProblemConfig& cfg) {
    const ProblemConfig c = validate_config(cfg);
    GroundTruth truth;
    truth.x_included = Vector(c.p_included);
    truth.x_missing = Vector(c.p_missing);
    if (c.p_included > 0) {
        const double entry = std::sqrt(c.r_s * c.power / static_cast<double>(c.p_included));
        truth.x_included.setConstant(entry);
    }
    if (c.p_missing > 0) {
        const double entry = std::sqrt((1.0 - c.r_s) * c.power / static_cast<double>(c.p_missing));
        truth.x_missing.setConstant(entry);
    }
    return truth;
}

} // namespace fakefeat
