#include "wvmn/spectro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wvmn::spectro {

namespace {

const char* kNames[kDomainCount] = {"RT", "DT", "HT", "ET", "XT", "YT", "ZT"};

double domain_value(const dsp::Point5D& p, Domain d) {
    switch (d) {
        case Domain::RT: return p.range;
        case Domain::DT: return p.velocity;
        case Domain::HT: return p.azimuth;
        case Domain::ET: return p.elevation;
        case Domain::XT: return p.x;
        case Domain::YT: return p.y;
        case Domain::ZT: return p.z;
    }
    return 0.0;
}

}  // namespace

const char* domain_name(Domain d) { return kNames[static_cast<int>(d)]; }

std::optional<Domain> domain_from_name(const std::string& name) {
    for (int i = 0; i < kDomainCount; ++i) {
        if (name == kNames[i]) return static_cast<Domain>(i);
    }
    return std::nullopt;
}

BuildOptions BuildOptions::defaults(const radar::ResolutionSpec& res) {
    BuildOptions o;
    o.extents[static_cast<int>(Domain::RT)] = {0.0, res.max_range};
    o.extents[static_cast<int>(Domain::DT)] = {-res.max_velocity, res.max_velocity};
    o.extents[static_cast<int>(Domain::HT)] = {-deg2rad(60.0), deg2rad(60.0)};
    o.extents[static_cast<int>(Domain::ET)] = {-deg2rad(60.0), deg2rad(60.0)};
    o.extents[static_cast<int>(Domain::XT)] = {-2.0, 2.0};
    o.extents[static_cast<int>(Domain::YT)] = {0.0, res.max_range};
    o.extents[static_cast<int>(Domain::ZT)] = {-1.5, 1.5};
    return o;
}

Spectrogram build_one(const std::vector<dsp::PointCloud5D>& frames, Domain domain,
                      const BuildOptions& options) {
    if (frames.empty()) throw std::invalid_argument("build_one: empty frame list");
    if (options.bins < 2) throw std::invalid_argument("build_one: need at least 2 bins");
    const Extent ext = options.extents[static_cast<int>(domain)];
    const double width = ext.hi - ext.lo;
    if (!(width > 0.0)) throw std::invalid_argument("build_one: zero-width extent");

    Spectrogram s;
    s.domain = domain;
    s.grid = Mat(options.bins, static_cast<int>(frames.size()));
    s.bin_resolution = width / options.bins;
    s.bin_origin = ext.lo;

    for (size_t t = 0; t < frames.size(); ++t) {
        for (const auto& p : frames[t].points) {
            const double v = domain_value(p, domain);
            int bin = static_cast<int>(std::floor((v - ext.lo) / width * options.bins));
            bin = std::clamp(bin, 0, options.bins - 1);
            s.grid.at(bin, static_cast<int>(t)) += p.amplitude;
        }
    }
    return s;
}

SpectrogramSet build_set(const std::vector<dsp::PointCloud5D>& frames, const BuildOptions& options) {
    SpectrogramSet set;
    for (int i = 0; i < kDomainCount; ++i) {
        set.domains[i] = build_one(frames, static_cast<Domain>(i), options);
    }
    return set;
}

Mat normalize_resize(const Mat& in, int out_h, int out_w) {
    if (out_h < 2 || out_w < 2) throw std::invalid_argument("normalize_resize: output dims must be >= 2");
    if (in.rows < 1 || in.cols < 1) throw std::invalid_argument("normalize_resize: empty input");

    Mat out(out_h, out_w);
    const double sy = in.rows > 1 ? static_cast<double>(in.rows - 1) / (out_h - 1) : 0.0;
    const double sx = in.cols > 1 ? static_cast<double>(in.cols - 1) / (out_w - 1) : 0.0;
    for (int r = 0; r < out_h; ++r) {
        const double fy = r * sy;
        const int y0 = std::min(static_cast<int>(fy), in.rows - 1);
        const int y1 = std::min(y0 + 1, in.rows - 1);
        const double wy = fy - y0;
        for (int c = 0; c < out_w; ++c) {
            const double fx = c * sx;
            const int x0 = std::min(static_cast<int>(fx), in.cols - 1);
            const int x1 = std::min(x0 + 1, in.cols - 1);
            const double wx = fx - x0;
            out.at(r, c) = (1 - wy) * ((1 - wx) * in.at(y0, x0) + wx * in.at(y0, x1)) +
                           wy * ((1 - wx) * in.at(y1, x0) + wx * in.at(y1, x1));
        }
    }

    const double lo = out.min_value();
    const double hi = out.max_value();
    if (hi - lo <= 0.0) {
        std::fill(out.v.begin(), out.v.end(), 0.0);
        return out;
    }
    for (double& x : out.v) x = (x - lo) / (hi - lo);
    return out;
}

double occupancy(const Mat& grid, double threshold_frac) {
    if (grid.empty()) throw std::invalid_argument("occupancy: empty grid");
    const double cutoff = threshold_frac * grid.max_value();
    size_t n = 0;
    for (double x : grid.v) {
        if (x > cutoff) ++n;
    }
    return static_cast<double>(n) / grid.size();
}

std::string to_text(const Spectrogram& s) {
    std::ostringstream out;
    out.precision(9);
    for (int r = 0; r < s.grid.rows; ++r) {
        for (int c = 0; c < s.grid.cols; ++c) {
            if (c) out << ' ';
            out << s.grid.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace wvmn::spectro
