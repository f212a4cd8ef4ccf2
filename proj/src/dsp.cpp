#include "wvmn/dsp.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace wvmn::dsp {

namespace {

// Iterative radix-2 Cooley-Tukey, in place. Config invariants guarantee
// power-of-two lengths, so no general-size machinery is needed.
void fft_inplace(std::complex<double>* x, int n) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / len;
        const std::complex<double> wlen = std::polar(1.0, ang);
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = x[i + k];
                const std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

Vec3 to_cartesian(double range, double azimuth, double elevation) {
    if (range < 0.0) throw std::invalid_argument("to_cartesian: negative range");
    const double ce = std::cos(elevation);
    return {range * ce * std::sin(azimuth), range * ce * std::cos(azimuth), range * std::sin(elevation)};
}

void from_cartesian(const Vec3& p, double& range, double& azimuth, double& elevation) {
    range = p.norm();
    if (range == 0.0) {
        azimuth = 0.0;
        elevation = 0.0;
        return;
    }
    elevation = std::asin(std::clamp(p.z / range, -1.0, 1.0));
    azimuth = std::atan2(p.x, p.y);
}

Point5D point_from_cartesian(double amplitude, const Vec3& p, double velocity) {
    Point5D pt;
    pt.amplitude = amplitude;
    pt.velocity = velocity;
    pt.x = p.x;
    pt.y = p.y;
    pt.z = p.z;
    from_cartesian(p, pt.range, pt.azimuth, pt.elevation);
    return pt;
}

Point5D point_from_spherical(double amplitude, double range, double azimuth, double elevation,
                             double velocity) {
    Point5D pt;
    pt.amplitude = amplitude;
    pt.range = range;
    pt.azimuth = azimuth;
    pt.elevation = elevation;
    pt.velocity = velocity;
    const Vec3 p = to_cartesian(range, azimuth, elevation);
    pt.x = p.x;
    pt.y = p.y;
    pt.z = p.z;
    return pt;
}

double RangeDopplerMap::channel_sum_magnitude(int r, int d) const {
    double sum = 0.0;
    for (int ch = 0; ch < channels; ++ch) sum += std::abs(at(ch, r, d));
    return sum;
}

std::vector<double> hann_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / n));
    }
    return w;
}

RangeDopplerMap range_doppler_map(const radar::IqCube& cube, const radar::RadarConfig& config,
                                  int frame) {
    if (cube.channels != config.virtual_channels() || cube.chirps != config.chirps_per_frame ||
        cube.samples != config.samples_per_chirp) {
        throw std::invalid_argument("range_doppler_map: cube dimensions do not match config");
    }
    if (frame < 0 || frame >= cube.frames) {
        throw std::invalid_argument("range_doppler_map: frame index out of range");
    }

    const int n_s = cube.samples;
    const int n_c = cube.chirps;
    RangeDopplerMap map;
    map.channels = cube.channels;
    map.range_bins = n_s / 2;
    map.doppler_bins = n_c;
    map.res = radar::derive_resolutions(config);
    map.cells.assign(static_cast<size_t>(map.channels) * map.range_bins * map.doppler_bins, {0.0, 0.0});

    const std::vector<double> w_fast = hann_window(n_s);
    const std::vector<double> w_slow = hann_window(n_c);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_s) * n_c);

    std::vector<std::complex<double>> fast(n_s);
    // Fast-time spectra for the kept (positive beat) half, all chirps.
    std::vector<std::complex<double>> half(static_cast<size_t>(map.range_bins) * n_c);
    std::vector<std::complex<double>> slow(n_c);

    for (int ch = 0; ch < map.channels; ++ch) {
        for (int c = 0; c < n_c; ++c) {
            for (int s = 0; s < n_s; ++s) {
                fast[s] = cube.at(frame, ch, c, s) * w_fast[s];
            }
            fft_inplace(fast.data(), n_s);
            for (int r = 0; r < map.range_bins; ++r) {
                half[static_cast<size_t>(r) * n_c + c] = fast[r];
            }
        }
        for (int r = 0; r < map.range_bins; ++r) {
            for (int c = 0; c < n_c; ++c) {
                slow[c] = half[static_cast<size_t>(r) * n_c + c] * w_slow[c];
            }
            fft_inplace(slow.data(), n_c);
            // fftshift: zero Doppler lands at bin n_c/2.
            for (int d = 0; d < n_c; ++d) {
                map.at(ch, r, d) = slow[(d + n_c / 2) % n_c] * scale;
            }
        }
    }
    return map;
}

SteeringTable::SteeringTable(const radar::RadarConfig& config, const BeamformOptions& options) {
    if (options.step <= 0.0 || options.span <= 0.0) {
        throw std::invalid_argument("SteeringTable: step and span must be positive");
    }
    channels_ = config.virtual_channels();
    const int half = static_cast<int>(std::round(options.span / options.step));
    for (int i = -half; i <= half; ++i) angles_.push_back(i * options.step);

    const int g = grid_size();
    conj_steering_.resize(static_cast<size_t>(g) * g * channels_);
    for (int e = 0; e < g; ++e) {
        for (int a = 0; a < g; ++a) {
            std::complex<double>* dst = &conj_steering_[(static_cast<size_t>(e) * g + a) * channels_];
            for (int ch = 0; ch < channels_; ++ch) {
                dst[ch] = std::polar(1.0, -radar::channel_phase(config, ch, angles_[a], angles_[e]));
            }
        }
    }
}

const std::complex<double>* SteeringTable::phasors(int az_idx, int el_idx) const {
    return &conj_steering_[(static_cast<size_t>(el_idx) * grid_size() + az_idx) * channels_];
}

AngleEstimate beamform_angles(const RangeDopplerMap& map, int range_bin, int doppler_bin,
                              const SteeringTable& table) {
    if (range_bin < 0 || range_bin >= map.range_bins || doppler_bin < 0 ||
        doppler_bin >= map.doppler_bins) {
        throw std::out_of_range("beamform_angles: cell outside map");
    }
    if (table.channels() != map.channels) {
        throw std::invalid_argument("beamform_angles: steering table channel mismatch");
    }

    std::vector<std::complex<double>> snapshot(map.channels);
    for (int ch = 0; ch < map.channels; ++ch) snapshot[ch] = map.at(ch, range_bin, doppler_bin);

    AngleEstimate best;
    best.power = -1.0;
    const int g = table.grid_size();
    for (int e = 0; e < g; ++e) {
        for (int a = 0; a < g; ++a) {
            const std::complex<double>* steer = table.phasors(a, e);
            std::complex<double> acc(0.0, 0.0);
            for (int ch = 0; ch < map.channels; ++ch) acc += steer[ch] * snapshot[ch];
            const double p = std::norm(acc);
            if (p > best.power) {
                best.power = p;
                best.azimuth = table.angle(a);
                best.elevation = table.angle(e);
            }
        }
    }
    return best;
}

AngleEstimate beamform_angles(const RangeDopplerMap& map, int range_bin, int doppler_bin,
                              const radar::RadarConfig& config, const BeamformOptions& options) {
    return beamform_angles(map, range_bin, doppler_bin, SteeringTable(config, options));
}

PointCloud5D extract_points(const RangeDopplerMap& map, const radar::RadarConfig& config,
                            double threshold_factor, const SteeringTable& table) {
    if (threshold_factor <= 0.0) {
        throw std::invalid_argument("extract_points: threshold_factor must be positive");
    }

    std::vector<double> mags(static_cast<size_t>(map.range_bins) * map.doppler_bins);
    for (int r = 0; r < map.range_bins; ++r) {
        for (int d = 0; d < map.doppler_bins; ++d) {
            mags[static_cast<size_t>(r) * map.doppler_bins + d] = map.channel_sum_magnitude(r, d);
        }
    }
    std::vector<double> sorted = mags;
    const size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
    const double median = sorted[mid];
    const double threshold = threshold_factor * median;

    PointCloud5D cloud;
    for (int r = 1; r < map.range_bins; ++r) {
        for (int d = 0; d < map.doppler_bins; ++d) {
            const double m = mags[static_cast<size_t>(r) * map.doppler_bins + d];
            if (!(m > threshold)) continue;
            const AngleEstimate est = beamform_angles(map, r, d, table);
            const double range = r * map.res.range_resolution;
            const double velocity = (d - map.doppler_bins / 2) * map.res.velocity_resolution;
            cloud.points.push_back(point_from_spherical(m, range, est.azimuth, est.elevation, velocity));
        }
    }
    return cloud;
}

PointCloud5D extract_points(const RangeDopplerMap& map, const radar::RadarConfig& config,
                            double threshold_factor, const BeamformOptions& options) {
    return extract_points(map, config, threshold_factor, SteeringTable(config, options));
}

}  // namespace wvmn::dsp
