#include "fakefeat/datagen.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace fakefeat {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += kGamma;
    return mix64(state);
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out.precision(17);
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0)
                out << ',';
            out << m(r, c);
        }
        out << '\n';
    }
}

} // namespace

std::uint64_t SeedSpec::key() const {
    const std::array<std::uint64_t, 5> words = {
        context, realization, noise_index,
        static_cast<std::uint64_t>(phase), static_cast<std::uint64_t>(role)};
    std::uint64_t k = mix64(master_seed + kGamma);
    std::uint64_t salt = kGamma;
    for (std::uint64_t w : words) {
        salt += kGamma;
        k = mix64(k ^ (w + salt));
    }
    return k;
}

std::uint64_t StreamRng::next_u64() {
    return splitmix64_next(state_);
}

double StreamRng::next_uniform() {
    // Top 53 bits, shifted into (0, 1]; never 0 so log() below is safe.
    const std::uint64_t bits = next_u64() >> 11;
    return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double StreamRng::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gaussian_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

Matrix gen_features(Index rows, Index cols, const SeedSpec& seed) {
    if (rows < 1)
        throw DimensionError("gen_features: rows must be >= 1");
    if (cols < 0)
        throw DimensionError("gen_features: cols must be >= 0");
    Matrix m(rows, cols);
    StreamRng rng(seed);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r)
            m(r, c) = rng.next_gaussian();
    return m;
}

Vector gen_noise(Index rows, double sigma_v, const SeedSpec& seed) {
    if (rows < 1)
        throw DimensionError("gen_noise: rows must be >= 1");
    if (!(sigma_v >= 0.0))
        throw NegativeParameterError("gen_noise: sigma_v must be >= 0");
    Vector v(rows);
    StreamRng rng(seed);
    for (Index r = 0; r < rows; ++r)
        v(r) = sigma_v * rng.next_gaussian();
    return v;
}

Vector gen_response(const Matrix& a_included, const Matrix& a_missing,
                    const GroundTruth& truth, const Vector& noise) {
    if (a_included.rows() != a_missing.rows() || a_included.rows() != noise.size())
        throw DimensionError("gen_response: row counts disagree");
    if (a_included.cols() != truth.x_included.size())
        throw DimensionError("gen_response: included block width does not match truth");
    if (a_missing.cols() != truth.x_missing.size())
        throw DimensionError("gen_response: missing block width does not match truth");
    return a_included * truth.x_included + a_missing * truth.x_missing + noise;
}

Dataset gen_dataset(const ProblemConfig& cfg, const GroundTruth& truth,
                    Index rows, const SeedSpec& seed) {
    validate_config(cfg);
    Dataset data;
    data.a_fake = gen_features(rows, cfg.p_fake, seed.with_role(StreamRole::fake_block));
    data.a_included = gen_features(rows, cfg.p_included, seed.with_role(StreamRole::included_block));
    data.a_missing = gen_features(rows, cfg.p_missing, seed.with_role(StreamRole::missing_block));
    data.noise = gen_noise(rows, cfg.sigma_v, seed.with_role(StreamRole::noise));
    data.response = gen_response(data.a_included, data.a_missing, truth, data.noise);
    return data;
}

void dump_dataset_csv(const Dataset& data, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    write_matrix_csv(data.a_fake, (base / "a_fake.csv").string());
    write_matrix_csv(data.a_included, (base / "a_included.csv").string());
    write_matrix_csv(data.a_missing, (base / "a_missing.csv").string());
    write_matrix_csv(data.noise, (base / "noise.csv").string());
    write_matrix_csv(data.response, (base / "response.csv").string());
}

} // namespace fakefeat
