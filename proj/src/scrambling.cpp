#include "qspread/scrambling.hpp"

#include "qspread/density.hpp"
#include "qspread/linalg.hpp"
#include "qspread/quench.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qspread {

Partition Partition::equal_half(int num_sites) {
    if(num_sites < 2) throw std::invalid_argument("equal-half partition needs L >= 2");
    return {num_sites, num_sites / 2, num_sites / 2, PartitionScheme::EqualHalf, false};
}

Partition Partition::two_site(int num_sites) {
    if(num_sites < 4) throw std::invalid_argument("two-site partition needs L >= 4");
    return {num_sites, 2, num_sites - 2, PartitionScheme::TwoSite, false};
}

Partition Partition::r_partition(int num_sites, int r) {
    if(r < 2 || r > num_sites / 2) throw std::invalid_argument("r-partition needs 2 <= r <= L/2");
    return {num_sites, r, num_sites - r, PartitionScheme::RPartition, false};
}

Partition Partition::parse(std::string_view tag, int num_sites) {
    bool d_first = false;
    if(const auto pos = tag.find(":d-first"); pos != std::string_view::npos && pos + 8 == tag.size()) {
        d_first = true;
        tag = tag.substr(0, pos);
    }
    Partition p;
    if(tag == "equal-half")
        p = equal_half(num_sites);
    else if(tag == "two-site")
        p = two_site(num_sites);
    else if(tag.starts_with("r="))
        p = r_partition(num_sites, std::stoi(std::string(tag.substr(2))));
    else
        throw std::invalid_argument("unknown partition '" + std::string(tag) + "'");
    p.d_first = d_first;
    return p;
}

SiteMask Partition::c_mask() const {
    return d_first ? all_sites(num_sites) & ~all_sites(out_d()) : all_sites(out_c);
}

std::string Partition::tag() const {
    std::string out;
    switch(scheme) {
        case PartitionScheme::EqualHalf: out = "equal-half"; break;
        case PartitionScheme::TwoSite: out = "two-site"; break;
        case PartitionScheme::RPartition: out = "r=" + std::to_string(in_a); break;
    }
    return d_first ? out + ":d-first" : out;
}

ChannelState::ChannelState(int num_sites, Eigen::MatrixXcd unitary, bool parity_conserving)
    : num_sites_(num_sites), coeff_(std::move(unitary)), parity_(parity_conserving) {
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    if(coeff_.rows() != dim || coeff_.cols() != dim) throw std::invalid_argument("unitary dimension must be 2^L");
    coeff_ /= std::sqrt(static_cast<double>(dim));
}

Eigen::MatrixXcd time_evolution_operator(const Spectrum &s, double t) {
    const Eigen::Index dim = s.dimension();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for(const auto &sec : s.sectors()) {
        const Eigen::Index n = sec.energies.size();
        Eigen::VectorXcd phase(n);
        for(Eigen::Index k = 0; k < n; ++k) phase(k) = std::polar(1.0, -sec.energies(k) * t);
        const Eigen::MatrixXcd scaled = sec.vectors * phase.asDiagonal();
        const Eigen::MatrixXcd block = scaled * sec.vectors.adjoint();
        for(Eigen::Index c = 0; c < n; ++c)
            for(Eigen::Index r = 0; r < n; ++r)
                u(static_cast<Eigen::Index>(sec.basis[static_cast<std::size_t>(r)]), static_cast<Eigen::Index>(sec.basis[static_cast<std::size_t>(c)])) = block(r, c);
    }
    return u;
}

ChannelState channel_state(const Spectrum &s, double t) {
    bool parity = true;
    for(const auto &sec : s.sectors()) {
        if(sec.basis.empty()) continue;
        const int p0 = std::popcount(sec.basis.front()) & 1;
        for(BasisIndex b : sec.basis) parity = parity && ((std::popcount(b) & 1) == p0);
    }
    return {s.num_sites(), time_evolution_operator(s, t), parity};
}

namespace {

struct Reshape {
    int row_bits = 0;
    int col_bits = 0;
    std::vector<BasisIndex> row_in, row_out, col_in, col_out;
};

Reshape make_reshape(const Partition &part, unsigned which) {
    if(which == 0 || which >= 15) throw std::invalid_argument("subsystem selection must be a non-empty proper subset of ABCD");
    const int n = part.num_sites;
    const SiteMask all = all_sites(n);
    const SiteMask in_keep = ((which & kA) ? part.a_mask() : 0) | ((which & kB) ? all & ~part.a_mask() : 0);
    const SiteMask out_keep = ((which & kC) ? part.c_mask() : 0) | ((which & kD) ? part.d_mask() : 0);
    const int kin = std::popcount(in_keep);
    const int kout = std::popcount(out_keep);
    Reshape r;
    r.row_bits = kin + kout;
    r.col_bits = 2 * n - r.row_bits;
    const BasisIndex dim = BasisIndex{1} << n;
    r.row_in.resize(dim);
    r.row_out.resize(dim);
    r.col_in.resize(dim);
    r.col_out.resize(dim);
    for(BasisIndex b = 0; b < dim; ++b) {
        r.row_in[b] = gather_bits(b, in_keep);
        r.row_out[b] = gather_bits(b, out_keep) << kin;
        r.col_in[b] = gather_bits(b, all & ~in_keep);
        r.col_out[b] = gather_bits(b, all & ~out_keep) << (n - kin);
    }
    return r;
}

/// Coefficient matrix with kept bits as rows. With `parity_block` >= 0 only the
/// rows and columns of that index parity are kept (the lowest bit, fixed by
/// the others, is dropped).
Eigen::MatrixXcd reshaped(const ChannelState &cs, const Reshape &r, int parity_block) {
    const auto &coeff = cs.coefficients();
    const Eigen::Index dim = coeff.rows();
    const int shift = parity_block >= 0 ? 1 : 0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << (r.row_bits - shift), Eigen::Index{1} << (r.col_bits - shift));
    for(Eigen::Index in = 0; in < dim; ++in) {
        const auto ui = static_cast<std::size_t>(in);
        for(Eigen::Index out = 0; out < dim; ++out) {
            const auto uo = static_cast<std::size_t>(out);
            const BasisIndex row = r.row_in[ui] | r.row_out[uo];
            if(parity_block >= 0 && (std::popcount(row) & 1) != parity_block) continue;
            const BasisIndex col = r.col_in[ui] | r.col_out[uo];
            if(parity_block >= 0 && (std::popcount(col) & 1) != parity_block) continue;
            m(static_cast<Eigen::Index>(row >> shift), static_cast<Eigen::Index>(col >> shift)) = coeff(out, in);
        }
    }
    return m;
}

/// Squared singular values of m via the Gram matrix of the smaller side.
Eigen::VectorXd schmidt_weights(const Eigen::MatrixXcd &m) {
    Eigen::MatrixXcd gram;
    if(m.rows() <= m.cols()) {
        gram = Eigen::MatrixXcd::Zero(m.rows(), m.rows());
        gram.selfadjointView<Eigen::Lower>().rankUpdate(m);
    } else {
        gram = Eigen::MatrixXcd::Zero(m.cols(), m.cols());
        gram.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
    }
    return hermitian_eigenvalues(gram);
}

double entropy_of(const Eigen::VectorXd &w) { return entropy_bits(std::span(w.data(), static_cast<std::size_t>(w.size()))); }

DensityMatrix explicit_reduced_density(const ChannelState &cs, const Partition &part, unsigned which) {
    const Reshape r = make_reshape(part, which);
    if(r.row_bits > 12) throw std::invalid_argument("definition-mode TMI is limited to 12 kept bits");
    const Eigen::MatrixXcd m = reshaped(cs, r, -1);
    return {r.row_bits, m * m.adjoint()};
}

} // namespace

double subsystem_oee(const ChannelState &cs, const Partition &part, unsigned which) {
    if(part.num_sites != cs.num_sites()) throw std::invalid_argument("partition does not match channel state size");
    const Reshape r = make_reshape(part, which);
    if(!cs.parity_conserving()) return entropy_of(schmidt_weights(reshaped(cs, r, -1)));
    // Row parity equals column parity for a parity-conserving U, so the
    // reshaped matrix is block diagonal.
    const Eigen::VectorXd even = schmidt_weights(reshaped(cs, r, 0));
    const Eigen::VectorXd odd = schmidt_weights(reshaped(cs, r, 1));
    Eigen::VectorXd all(even.size() + odd.size());
    all << even, odd;
    return entropy_of(all);
}

TmiResult tmi(const ChannelState &cs, const Partition &part, TmiMode mode) {
    const double la = part.in_a, lc = part.out_c, ld = part.out_d();
    TmiResult out;
    out.partition = part.tag();
    out.i3_normalized = std::numeric_limits<double>::quiet_NaN();

    const double s_ac = subsystem_oee(cs, part, kA | kC);
    const double s_ad = subsystem_oee(cs, part, kA | kD);
    out.i_ac = la + lc - s_ac;
    out.i_ad = la + ld - s_ad;
    out.i_acd = 2.0 * la;
    out.i3 = out.i_ac + out.i_ad - out.i_acd;
    if(mode == TmiMode::Fast) return out;

    auto s = [&](unsigned which) { return von_neumann_entropy(explicit_reduced_density(cs, part, which)); };
    const double sa = s(kA), sc = s(kC), sd = s(kD);
    TmiResult def = out;
    def.i_ac = sa + sc - s(kA | kC);
    def.i_ad = sa + sd - s(kA | kD);
    def.i_acd = sa + s(kC | kD) - s(kA | kC | kD);
    def.i3 = def.i_ac + def.i_ad - def.i_acd;
    if(std::abs(def.i3 - out.i3) > 1e-8)
        throw NumericError("TMI definition/fast mismatch: " + std::to_string(def.i3) + " vs " + std::to_string(out.i3));
    return def;
}

std::vector<TmiResult> tmi_series(const Spectrum &s, std::span<const Partition> parts, const std::vector<double> &times,
                                  std::span<const double> haar_means, double time_scale) {
    if(!haar_means.empty() && haar_means.size() != parts.size()) throw std::invalid_argument("one Haar mean per partition");
    std::vector<TmiResult> out;
    for(double t : times) {
        const ChannelState cs = channel_state(s, time_scale * t);
        for(std::size_t p = 0; p < parts.size(); ++p) {
            TmiResult r = tmi(cs, parts[p]);
            r.time = t;
            if(!haar_means.empty()) r.i3_normalized = r.i3 / haar_means[p];
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<double> saturation_times() { return log_time_grid(1e9, 1e10, 10); }

std::vector<SaturationValue> saturation_tmi(const Spectrum &s, std::span<const Partition> parts, std::span<const double> haar_means,
                                            double time_scale) {
    if(haar_means.size() != parts.size()) throw std::invalid_argument("one Haar mean per partition");
    const auto times = saturation_times();
    const auto series = tmi_series(s, parts, times, {}, time_scale);
    std::vector<SaturationValue> out(parts.size());
    for(std::size_t k = 0; k < series.size(); ++k) out[k % parts.size()].i3 += series[k].i3;
    for(std::size_t p = 0; p < parts.size(); ++p) {
        out[p].i3 /= static_cast<double>(times.size());
        out[p].i3_normalized = out[p].i3 / haar_means[p];
    }
    return out;
}

} // namespace qspread
