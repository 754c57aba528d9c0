#pragma once

#include <cstdint>
#include <string>

#include "fakefeat/model.hpp"

namespace fakefeat {

// Role of a stream within one dataset draw.
enum class StreamRole : std::uint64_t {
    fake_block = 1,
    included_block = 2,
    missing_block = 3,
    noise = 4,
};

// Train/test tag for a stream.
enum class StreamPhase : std::uint64_t {
    train = 1,
    test = 2,
};

// Structured label of an independent random stream. Two SeedSpecs that differ
// in any field produce independent streams; identical SeedSpecs reproduce the
// same output bit for bit. The key is derived by folding the fields through a
// SplitMix64-style finalizer, so no field placement aliases another.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t context = 0;     // caller-chosen salt, e.g. the sweep cell's p_fake
    std::uint64_t realization = 0; // feature realization index
    std::uint64_t noise_index = 0; // noise vector index within a realization
    StreamPhase phase = StreamPhase::train;
    StreamRole role = StreamRole::noise;

    std::uint64_t key() const;

    SeedSpec with_role(StreamRole r) const {
        SeedSpec s = *this;
        s.role = r;
        return s;
    }
    SeedSpec with_phase(StreamPhase p) const {
        SeedSpec s = *this;
        s.phase = p;
        return s;
    }
};

// Counter-free SplitMix64 stream with Box-Muller Gaussian variates.
//
// The uniform step maps the top 53 bits of each 64-bit output into (0, 1];
// Gaussian values come in Box-Muller pairs (the second of each pair is cached
// and returned on the next call). Output is platform-independent up to libm
// rounding of log/sqrt/cos/sin.
class StreamRng {
public:
    explicit StreamRng(const SeedSpec& seed) : state_(seed.key()) {}

    std::uint64_t next_u64();
    double next_uniform(); // in (0, 1]
    double next_gaussian();

private:
    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

// rows x cols matrix of i.i.d. N(0,1) entries, filled in column-major order
// (matching the Eigen storage order used throughout).
Matrix gen_features(Index rows, Index cols, const SeedSpec& seed);

// Length-rows vector of i.i.d. N(0, sigma_v^2) entries.
Vector gen_noise(Index rows, double sigma_v, const SeedSpec& seed);

// response = a_included * x_included + a_missing * x_missing + noise.
// The fake block never enters the response.
Vector gen_response(const Matrix& a_included, const Matrix& a_missing,
                    const GroundTruth& truth, const Vector& noise);

// Draws all three feature blocks and the noise from four distinct sub-streams
// of `seed` (distinguished by StreamRole) and assembles the response.
Dataset gen_dataset(const ProblemConfig& cfg, const GroundTruth& truth,
                    Index rows, const SeedSpec& seed);

// Debug dump: writes a_fake.csv, a_included.csv, a_missing.csv, noise.csv and
// response.csv under `dir`.
void dump_dataset_csv(const Dataset& data, const std::string& dir);

} // namespace fakefeat
