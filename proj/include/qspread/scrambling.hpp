#pragma once

#include "qspread/spectrum.hpp"

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qspread {

enum class PartitionScheme { EqualHalf, TwoSite, RPartition };

/// Split of the input copy into A (first in_a sites) | B and of the output copy
/// into C | D. C holds the first out_c sites unless `d_first` is set, in which
/// case D takes the low sites instead.
struct Partition {
    int num_sites = 0;
    int in_a = 0;
    int out_c = 0;
    PartitionScheme scheme = PartitionScheme::EqualHalf;
    bool d_first = false;

    static Partition equal_half(int num_sites);
    /// L_A = L_D = 2.
    static Partition two_site(int num_sites);
    /// L_A = L_D = r, r in 2..L/2.
    static Partition r_partition(int num_sites, int r);
    /// "equal-half", "two-site" or "r=3", optionally suffixed with ":d-first".
    static Partition parse(std::string_view tag, int num_sites);

    int in_b() const { return num_sites - in_a; }
    int out_d() const { return num_sites - out_c; }
    SiteMask a_mask() const { return all_sites(in_a); }
    SiteMask c_mask() const;
    SiteMask d_mask() const { return all_sites(num_sites) & ~c_mask(); }
    std::string tag() const;
};

/// Subsystem selector for subsystem_oee.
enum Subsystem : unsigned { kA = 1, kB = 2, kC = 4, kD = 8 };

/// The time-evolution operator as a unit vector of the doubled space,
/// sum_nu N^{-1/2} |nu>_in (x) U|nu>_out, stored as the N x N coefficient
/// matrix U / sqrt(N) (rows = out index, columns = in index).
class ChannelState {
  public:
    /// `parity_conserving` promises that U commutes with prod_i Z_i; the
    /// entropy kernels then work on the two parity blocks separately.
    ChannelState(int num_sites, Eigen::MatrixXcd unitary, bool parity_conserving);

    int num_sites() const { return num_sites_; }
    const Eigen::MatrixXcd &coefficients() const { return coeff_; }
    bool parity_conserving() const { return parity_; }
    double norm() const { return coeff_.norm(); }

  private:
    int num_sites_;
    Eigen::MatrixXcd coeff_;
    bool parity_;
};

/// exp(-i H t) assembled from the spectrum.
Eigen::MatrixXcd time_evolution_operator(const Spectrum &s, double t);
ChannelState channel_state(const Spectrum &s, double t);

/// Operator entanglement entropy (bits) of the union of the selected
/// subsystems. `which` must be a non-empty proper subset of {A, B, C, D}.
double subsystem_oee(const ChannelState &cs, const Partition &part, unsigned which);

enum class TmiMode {
    Fast,      ///< I_3 = L - S_AC - S_AD from two singular-value computations
    Definition ///< all BMI terms from explicit reduced density matrices, cross-checked
};

struct TmiResult {
    double i_ac = 0.0;
    double i_ad = 0.0;
    double i_acd = 0.0;
    double i3 = 0.0;
    /// I_3 / I_3^Haar, NaN when no reference was supplied.
    double i3_normalized = 0.0;
    double time = 0.0;
    std::string partition;
};

TmiResult tmi(const ChannelState &cs, const Partition &part, TmiMode mode = TmiMode::Fast);

struct HaarReference {
    int num_sites = 0;
    int in_a = 0;
    int out_c = 0;
    double mean = 0.0;
    double standard_error = 0.0;
    int n_samples = 0;
    std::uint64_t seed = 0;
};

constexpr int kDefaultHaarSamples = 20;
constexpr std::uint64_t kDefaultHaarSeed = 20220901;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the column
/// phases fixed by the diagonal of R. Deterministic in (seed, sample).
Eigen::MatrixXcd haar_unitary(int num_sites, std::uint64_t seed, std::uint64_t sample);

HaarReference haar_reference(int num_sites, const Partition &part, int n_samples, std::uint64_t seed);

/// JSON cache {"L:LA:LC": {mean, stderr, n_samples, seed}}; reads and writes
/// are serialized. An entry is reused only if its sample count and seed match.
class HaarCache {
  public:
    HaarCache() = default;
    /// Empty path: in-memory only.
    explicit HaarCache(std::string path);

    HaarReference get(const Partition &part, int n_samples = kDefaultHaarSamples, std::uint64_t seed = kDefaultHaarSeed);
    static std::string key(const Partition &part);

  private:
    void load();
    void save() const;

    std::string path_;
    std::vector<HaarReference> entries_;
    mutable std::mutex mutex_;
};

/// I_3 for each partition at each time; the channel state is built once per
/// time. `haar_means` (same order as `parts`, may be empty) normalizes.
/// Physical time is time_scale * t. Result index: time-major.
std::vector<TmiResult> tmi_series(const Spectrum &s, std::span<const Partition> parts, const std::vector<double> &times,
                                  std::span<const double> haar_means = {}, double time_scale = 1.0);

/// Ten log-spaced times in [1e9, 1e10].
std::vector<double> saturation_times();

struct SaturationValue {
    double i3 = 0.0;            ///< mean raw I_3 over the window (bits)
    double i3_normalized = 0.0; ///< i3 / haar mean
};

std::vector<SaturationValue> saturation_tmi(const Spectrum &s, std::span<const Partition> parts, std::span<const double> haar_means,
                                            double time_scale = 1.0);

} // namespace qspread
