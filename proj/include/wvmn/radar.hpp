#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "wvmn/common.hpp"

namespace wvmn::radar {

/// FMCW waveform, sampling, and array geometry. Defaults reproduce the
/// 60 GHz MIMO sensor configuration the rest of the pipeline is sized for.
struct RadarConfig {
    double carrier_frequency = 60.5e9;   // Hz
    double bandwidth = 3.5e9;            // Hz (nominal sweep)
    double chirp_slope = 118.24e12;      // Hz/s
    double adc_rate = 10.0e6;            // samples/s
    int samples_per_chirp = 256;
    int chirps_per_frame = 256;
    double frame_period = 50e-3;         // s
    int tx_count = 4;
    int rx_count = 4;
    double element_spacing = 0.0;        // m; 0 selects half-wavelength

    double wavelength() const { return kSpeedOfLight / carrier_frequency; }

    /// Element spacing with the half-wavelength default resolved.
    double spacing() const { return element_spacing > 0.0 ? element_spacing : wavelength() / 2.0; }

    int virtual_channels() const { return tx_count * rx_count; }

    /// Effective swept bandwidth: slope times the sampled window.
    double effective_bandwidth() const { return chirp_slope * samples_per_chirp / adc_rate; }

    /// Throws std::invalid_argument when any invariant fails.
    void validate() const;

    /// Plain-text key-value file, one `key = value` (or `key value`) per
    /// line, `#` comments. Keys match the field names above; unknown keys
    /// are rejected. element_spacing may be omitted.
    static RadarConfig from_file(const std::filesystem::path& path);
};

struct ResolutionSpec {
    double range_resolution = 0.0;     // m
    double velocity_resolution = 0.0;  // m/s
    double max_range = 0.0;            // m
    double max_velocity = 0.0;         // m/s
    double wavelength = 0.0;           // m
    double chirp_interval = 0.0;       // s, chirp repetition interval T_c
};

/// Standard FMCW resolution relationships, driven by the effective swept
/// bandwidth and back-to-back chirp timing (T_c = frame_period / chirps).
ResolutionSpec derive_resolutions(const RadarConfig& config);

/// Point scatterer seen by the radar.
struct Target {
    double range = 0.0;      // m
    double velocity = 0.0;   // m/s, radial (positive receding)
    double azimuth = 0.0;    // rad
    double elevation = 0.0;  // rad
    double amplitude = 1.0;  // linear
};

/// Complex baseband samples indexed [frame][virtual_channel][chirp][sample].
struct IqCube {
    int frames = 0;
    int channels = 0;
    int chirps = 0;
    int samples = 0;
    std::vector<std::complex<double>> data;

    IqCube() = default;
    IqCube(int f, int ch, int c, int s)
        : frames(f), channels(ch), chirps(c), samples(s),
          data(static_cast<size_t>(f) * ch * c * s, {0.0, 0.0}) {}

    size_t index(int f, int ch, int c, int s) const {
        return ((static_cast<size_t>(f) * channels + ch) * chirps + c) * samples + s;
    }
    std::complex<double>& at(int f, int ch, int c, int s) { return data[index(f, ch, c, s)]; }
    const std::complex<double>& at(int f, int ch, int c, int s) const { return data[index(f, ch, c, s)]; }
};

/// Synthesizes the IF signal of point targets under the stop-and-go
/// assumption: per chirp, each target contributes a tone at beat frequency
/// 2*slope*R/c, a chirp-to-chirp phase rotation of 4*pi*v*T_c/lambda, and a
/// per-channel phase from the planar virtual-array geometry. Target ranges
/// advance with their radial velocity across chirps and frames. Complex
/// white noise (per-component stddev noise_stddev) is added when nonzero.
///
/// Throws std::invalid_argument for targets outside the unambiguous
/// range/velocity region.
IqCube synth_if_cube(const RadarConfig& config, const std::vector<Target>& targets,
                     double noise_stddev, int n_frames = 1, uint64_t noise_seed = 0);

/// Phase of the virtual channel (row-major: vk = row * tx_count + col) for a
/// plane wave from (azimuth, elevation). Columns span the horizontal axis,
/// rows the vertical axis.
double channel_phase(const RadarConfig& config, int virtual_channel, double azimuth, double elevation);

}  // namespace wvmn::radar
