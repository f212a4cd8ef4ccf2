#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wvmn/common.hpp"
#include "wvmn/dsp.hpp"

namespace wvmn::spectro {

enum class Domain : int { RT = 0, DT, HT, ET, XT, YT, ZT };
inline constexpr int kDomainCount = 7;

const char* domain_name(Domain d);
std::optional<Domain> domain_from_name(const std::string& name);

/// Accumulated amplitude over [bin][frame]. bin_origin is the physical value
/// at the lower edge of bin 0; bin centers sit at origin + (k + 0.5) * res.
struct Spectrogram {
    Domain domain = Domain::RT;
    Mat grid;  // rows = bins, cols = frames
    double bin_resolution = 0.0;
    double bin_origin = 0.0;

    int bins() const { return grid.rows; }
    int frames() const { return grid.cols; }
};

struct Extent {
    double lo = 0.0;
    double hi = 0.0;
};

struct BuildOptions {
    int bins = 64;
    std::array<Extent, kDomainCount> extents{};

    /// Extents sized to the simulated room: range/velocity from the radar
    /// resolution spec, +-60 deg angles, and fixed Cartesian spans.
    static BuildOptions defaults(const radar::ResolutionSpec& res);
};

struct SpectrogramSet {
    std::array<Spectrogram, kDomainCount> domains;

    const Spectrogram& operator[](Domain d) const { return domains[static_cast<int>(d)]; }
    Spectrogram& operator[](Domain d) { return domains[static_cast<int>(d)]; }
};

/// Accumulates each point's amplitude into the linearly quantized bin of its
/// domain value, per frame. Out-of-extent values clamp to the edge bins so
/// no energy is lost. Throws on empty frame lists or zero-width extents.
SpectrogramSet build_set(const std::vector<dsp::PointCloud5D>& frames, const BuildOptions& options);

/// Builds a single domain (same quantization rules as build_set).
Spectrogram build_one(const std::vector<dsp::PointCloud5D>& frames, Domain domain,
                      const BuildOptions& options);

/// Corner-aligned bilinear resize followed by min-max normalization into
/// [0,1]. An all-constant input maps to all-zero.
Mat normalize_resize(const Mat& in, int out_h, int out_w);

/// Fraction of cells strictly above threshold_frac times the max cell.
double occupancy(const Mat& grid, double threshold_frac);

/// Plain-text matrix dump: one row per line, space-separated cells.
std::string to_text(const Spectrogram& s);

}  // namespace wvmn::spectro
