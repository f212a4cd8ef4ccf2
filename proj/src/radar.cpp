#include "wvmn/radar.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace wvmn::radar {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

void RadarConfig::validate() const {
    if (carrier_frequency <= 0 || bandwidth <= 0 || chirp_slope <= 0 || adc_rate <= 0 ||
        frame_period <= 0 || samples_per_chirp <= 0 || chirps_per_frame <= 0 ||
        tx_count <= 0 || rx_count <= 0 || spacing() <= 0) {
        throw std::invalid_argument("RadarConfig: all parameters must be positive");
    }
    if (!is_power_of_two(samples_per_chirp) || !is_power_of_two(chirps_per_frame)) {
        throw std::invalid_argument("RadarConfig: samples_per_chirp and chirps_per_frame must be powers of two");
    }
    // Effective sweep may exceed the nominal bandwidth only by rounding slack.
    if (effective_bandwidth() > bandwidth * 1.01) {
        throw std::invalid_argument("RadarConfig: chirp sweep exceeds nominal bandwidth");
    }
}

RadarConfig RadarConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("RadarConfig: cannot open " + path.string());

    RadarConfig cfg;
    std::map<std::string, double*> fields = {
        {"carrier_frequency", &cfg.carrier_frequency},
        {"bandwidth", &cfg.bandwidth},
        {"chirp_slope", &cfg.chirp_slope},
        {"adc_rate", &cfg.adc_rate},
        {"frame_period", &cfg.frame_period},
        {"element_spacing", &cfg.element_spacing},
    };
    std::map<std::string, int*> int_fields = {
        {"samples_per_chirp", &cfg.samples_per_chirp},
        {"chirps_per_frame", &cfg.chirps_per_frame},
        {"tx_count", &cfg.tx_count},
        {"rx_count", &cfg.rx_count},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        for (char& c : line) {
            if (c == '=' || c == ':') c = ' ';
        }
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        double value;
        if (!(ss >> value)) {
            throw std::runtime_error("RadarConfig: bad value at line " + std::to_string(lineno));
        }
        if (auto it = fields.find(key); it != fields.end()) {
            *it->second = value;
        } else if (auto it2 = int_fields.find(key); it2 != int_fields.end()) {
            *it2->second = static_cast<int>(value);
        } else {
            throw std::runtime_error("RadarConfig: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ResolutionSpec derive_resolutions(const RadarConfig& config) {
    config.validate();
    ResolutionSpec spec;
    spec.wavelength = config.wavelength();
    spec.chirp_interval = config.frame_period / config.chirps_per_frame;
    spec.range_resolution = kSpeedOfLight / (2.0 * config.effective_bandwidth());
    spec.velocity_resolution = spec.wavelength / (2.0 * config.chirps_per_frame * spec.chirp_interval);
    spec.max_range = (config.samples_per_chirp / 2) * spec.range_resolution;
    spec.max_velocity = (config.chirps_per_frame / 2) * spec.velocity_resolution;
    return spec;
}

double channel_phase(const RadarConfig& config, int virtual_channel, double azimuth, double elevation) {
    const int col = virtual_channel % config.tx_count;
    const int row = virtual_channel / config.tx_count;
    const double k = 2.0 * std::numbers::pi / config.wavelength() * config.spacing();
    return k * (col * std::cos(elevation) * std::sin(azimuth) + row * std::sin(elevation));
}

IqCube synth_if_cube(const RadarConfig& config, const std::vector<Target>& targets,
                     double noise_stddev, int n_frames, uint64_t noise_seed) {
    config.validate();
    if (n_frames < 1) throw std::invalid_argument("synth_if_cube: n_frames must be >= 1");
    const ResolutionSpec res = derive_resolutions(config);
    for (const Target& t : targets) {
        if (!(t.range > 0.0 && t.range < res.max_range)) {
            throw std::invalid_argument("synth_if_cube: target range outside unambiguous region");
        }
        if (!(std::abs(t.velocity) < res.max_velocity)) {
            throw std::invalid_argument("synth_if_cube: target velocity outside unambiguous region");
        }
    }

    const int channels = config.virtual_channels();
    IqCube cube(n_frames, channels, config.chirps_per_frame, config.samples_per_chirp);

    const double lambda = config.wavelength();
    const double tc = res.chirp_interval;
    for (const Target& t : targets) {
        // Per-channel array phases are range independent; hoist them.
        std::vector<std::complex<double>> array_phasor(channels);
        for (int ch = 0; ch < channels; ++ch) {
            array_phasor[ch] = std::polar(1.0, channel_phase(config, ch, t.azimuth, t.elevation));
        }
        for (int f = 0; f < n_frames; ++f) {
            for (int c = 0; c < config.chirps_per_frame; ++c) {
                const double r_now = t.range + t.velocity * (f * config.frame_period + c * tc);
                const double beat = 2.0 * config.chirp_slope * r_now / kSpeedOfLight;
                const double phase0 = 4.0 * std::numbers::pi * r_now / lambda;
                // Incremental phasor over fast-time samples; 256 steps keep
                // the accumulated rounding far below the noise floor.
                const std::complex<double> step =
                    std::polar(1.0, 2.0 * std::numbers::pi * beat / config.adc_rate);
                std::complex<double> tone = std::polar(t.amplitude, phase0);
                for (int s = 0; s < config.samples_per_chirp; ++s) {
                    for (int ch = 0; ch < channels; ++ch) {
                        cube.at(f, ch, c, s) += tone * array_phasor[ch];
                    }
                    tone *= step;
                }
            }
        }
    }

    if (noise_stddev > 0.0) {
        std::mt19937_64 rng(noise_seed);
        std::normal_distribution<double> gauss(0.0, noise_stddev);
        for (auto& sample : cube.data) {
            sample += std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    return cube;
}

}  // namespace wvmn::radar
