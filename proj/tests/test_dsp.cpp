#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wvmn/dsp.hpp"

using namespace wvmn;
using namespace wvmn::dsp;

namespace {

radar::RadarConfig paper_config() { return radar::RadarConfig{}; }

int argmax_range_bin(const RangeDopplerMap& map, int* doppler_out = nullptr) {
    int best_r = 0, best_d = 0;
    double best = -1.0;
    for (int r = 0; r < map.range_bins; ++r) {
        for (int d = 0; d < map.doppler_bins; ++d) {
            const double m = map.channel_sum_magnitude(r, d);
            if (m > best) {
                best = m;
                best_r = r;
                best_d = d;
            }
        }
    }
    if (doppler_out) *doppler_out = best_d;
    return best_r;
}

}  // namespace

TEST_CASE("to_cartesian matches the fixed convention") {
    const Vec3 a = to_cartesian(2.0, 0.0, 0.0);
    CHECK(a.x == doctest::Approx(0.0));
    CHECK(a.y == doctest::Approx(2.0));
    CHECK(a.z == doctest::Approx(0.0));

    const Vec3 b = to_cartesian(2.0, deg2rad(30.0), 0.0);
    CHECK(b.x == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(b.y == doctest::Approx(1.732).epsilon(1e-3));
    CHECK(b.z == doctest::Approx(0.0));

    const Vec3 c = to_cartesian(1.0, 0.0, deg2rad(90.0));
    CHECK(c.x == doctest::Approx(0.0));
    CHECK(std::abs(c.y) < 1e-12);
    CHECK(c.z == doctest::Approx(1.0));
}

TEST_CASE("spherical round trip to 1e-9") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.1, 6.0);
    std::uniform_real_distribution<double> ua(-1.4, 1.4);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng), h = ua(rng), e = ua(rng);
        const Vec3 p = to_cartesian(r, h, e);
        double r2, h2, e2;
        from_cartesian(p, r2, h2, e2);
        CHECK(std::abs(r - r2) < 1e-9);
        CHECK(std::abs(h - h2) < 1e-9);
        CHECK(std::abs(e - e2) < 1e-9);
    }
}

TEST_CASE("all-zero cube gives an all-zero map") {
    auto cfg = paper_config();
    cfg.samples_per_chirp = 64;
    cfg.chirps_per_frame = 32;
    const radar::IqCube cube(1, cfg.virtual_channels(), cfg.chirps_per_frame, cfg.samples_per_chirp);
    const RangeDopplerMap map = range_doppler_map(cube, cfg);
    for (const auto& c : map.cells) CHECK(std::abs(c) == 0.0);
    CHECK(map.range_bins == 32);
    CHECK(map.doppler_bins == 32);
}

TEST_CASE("dimension mismatch is rejected") {
    auto cfg = paper_config();
    const radar::IqCube cube(1, 4, 64, 64);
    CHECK_THROWS_AS(range_doppler_map(cube, cfg), std::invalid_argument);
}

TEST_CASE("single static target peaks at the predicted range bin, zero-Doppler centered") {
    const auto cfg = paper_config();
    const auto cube = radar::synth_if_cube(cfg, {radar::Target{3.2, 0.0, 0.0, 0.0, 1.0}}, 0.0);
    const auto map = range_doppler_map(cube, cfg);

    int d = 0;
    const int r = argmax_range_bin(map, &d);
    // 3.2 m / 0.0495 m = 64.6 -> bin 64 or 65
    CHECK(r >= 64);
    CHECK(r <= 65);
    CHECK(d == map.doppler_bins / 2);
}

TEST_CASE("moving target shows the predicted Doppler offset") {
    const auto cfg = paper_config();
    const auto cube = radar::synth_if_cube(cfg, {radar::Target{2.5, 1.0, 0.0, 0.0, 1.0}}, 0.0);
    const auto map = range_doppler_map(cube, cfg);

    int d = 0;
    argmax_range_bin(map, &d);
    const int offset = d - map.doppler_bins / 2;
    CHECK(offset >= 19);  // 1.0 / 0.0496 = 20.2
    CHECK(offset <= 21);
}

TEST_CASE("two well-separated targets give two local maxima at predicted bins") {
    const auto cfg = paper_config();
    const auto res = radar::derive_resolutions(cfg);
    const radar::Target t1{2.0, 0.0, 0.0, 0.0, 1.0};
    const radar::Target t2{5.0, -2.0, 0.0, 0.0, 1.0};
    const auto map = range_doppler_map(radar::synth_if_cube(cfg, {t1, t2}, 0.0), cfg);

    const int r1 = static_cast<int>(std::round(t1.range / res.range_resolution));
    const int r2 = static_cast<int>(std::round(t2.range / res.range_resolution));
    const int d1 = map.doppler_bins / 2;
    const int d2 = map.doppler_bins / 2 + static_cast<int>(std::round(t2.velocity / res.velocity_resolution));

    auto local_peak_near = [&](int r0, int d0) {
        double best = -1.0;
        int br = 0, bd = 0;
        for (int r = r0 - 2; r <= r0 + 2; ++r) {
            for (int d = d0 - 2; d <= d0 + 2; ++d) {
                const double m = map.channel_sum_magnitude(r, d);
                if (m > best) {
                    best = m;
                    br = r;
                    bd = d;
                }
            }
        }
        // The window peak must dominate its surroundings by a wide margin.
        const double away = map.channel_sum_magnitude(r0 + 10, d0 + 10);
        CHECK(best > 10 * away);
        CHECK(std::abs(br - r0) <= 1);
        CHECK(std::abs(bd - d0) <= 1);
    };
    local_peak_near(r1, d1);
    local_peak_near(r2, d2);
}

TEST_CASE("Parseval: unitary map energy equals windowed time-domain energy") {
    // Integer-bin static target: the periodic Hann window confines its
    // spectrum to three bins per axis, all inside the kept half.
    auto cfg = paper_config();
    const auto res = radar::derive_resolutions(cfg);
    const double range = 32 * res.range_resolution;
    const auto cube = radar::synth_if_cube(cfg, {radar::Target{range, 0.0, 0.0, 0.0, 1.0}}, 0.0);
    const auto map = range_doppler_map(cube, cfg);

    const auto wf = hann_window(cfg.samples_per_chirp);
    const auto ws = hann_window(cfg.chirps_per_frame);
    double time_energy = 0.0;
    for (int ch = 0; ch < cube.channels; ++ch) {
        for (int c = 0; c < cube.chirps; ++c) {
            for (int s = 0; s < cube.samples; ++s) {
                time_energy += std::norm(cube.at(0, ch, c, s) * wf[s] * ws[c]);
            }
        }
    }
    double map_energy = 0.0;
    for (const auto& cell : map.cells) map_energy += std::norm(cell);

    CHECK(std::abs(map_energy - time_energy) / time_energy < 1e-6);
}

TEST_CASE("beamforming recovers broadside for equal-phase channels") {
    auto cfg = paper_config();
    RangeDopplerMap map;
    map.channels = cfg.virtual_channels();
    map.range_bins = 4;
    map.doppler_bins = 4;
    map.res = radar::derive_resolutions(cfg);
    map.cells.assign(static_cast<size_t>(map.channels) * 16, {1.0, 0.0});

    const auto est = beamform_angles(map, 2, 2, cfg);
    CHECK(est.azimuth == doctest::Approx(0.0));
    CHECK(est.elevation == doctest::Approx(0.0));
    CHECK(est.power > 0.0);

    CHECK_THROWS_AS(beamform_angles(map, 9, 0, cfg), std::out_of_range);
}

TEST_CASE("pi/2 phase gradient along the azimuth axis maps to 30 degrees") {
    auto cfg = paper_config();
    RangeDopplerMap map;
    map.channels = cfg.virtual_channels();
    map.range_bins = 1;
    map.doppler_bins = 1;
    map.res = radar::derive_resolutions(cfg);
    map.cells.resize(map.channels);
    for (int ch = 0; ch < map.channels; ++ch) {
        const int col = ch % cfg.tx_count;
        map.cells[map.index(ch, 0, 0)] = std::polar(1.0, col * std::numbers::pi / 2.0);
    }

    const auto est = beamform_angles(map, 0, 0, cfg);
    CHECK(std::abs(est.azimuth - std::asin(0.5)) <= deg2rad(1.0) + 1e-12);
    CHECK(std::abs(est.elevation) <= deg2rad(1.0) + 1e-12);
}

TEST_CASE("synthetic target angles recovered within one grid step") {
    const auto cfg = paper_config();
    const radar::Target t{3.0, 0.0, deg2rad(20.0), deg2rad(-10.0), 1.0};
    const auto map = range_doppler_map(radar::synth_if_cube(cfg, {t}, 0.0), cfg);
    int d = 0;
    const int r = argmax_range_bin(map, &d);
    const auto est = beamform_angles(map, r, d, cfg);
    CHECK(std::abs(est.azimuth - t.azimuth) <= deg2rad(1.0) + 1e-12);
    CHECK(std::abs(est.elevation - t.elevation) <= deg2rad(1.0) + 1e-12);
}

TEST_CASE("extract_points edge behavior") {
    auto cfg = paper_config();
    cfg.samples_per_chirp = 64;
    cfg.chirps_per_frame = 32;

    SUBCASE("all-zero map yields an empty cloud") {
        const radar::IqCube cube(1, cfg.virtual_channels(), cfg.chirps_per_frame, cfg.samples_per_chirp);
        const auto cloud = extract_points(range_doppler_map(cube, cfg), cfg, 8.0);
        CHECK(cloud.points.empty());
    }
    SUBCASE("infinite threshold yields an empty cloud") {
        const auto cube = radar::synth_if_cube(cfg, {radar::Target{1.5, 0, 0, 0, 1}}, 0.01, 1, 3);
        const auto cloud =
            extract_points(range_doppler_map(cube, cfg), cfg, std::numeric_limits<double>::infinity());
        CHECK(cloud.points.empty());
    }
    SUBCASE("non-positive threshold rejected") {
        const radar::IqCube cube(1, cfg.virtual_channels(), cfg.chirps_per_frame, cfg.samples_per_chirp);
        CHECK_THROWS_AS(extract_points(range_doppler_map(cube, cfg), cfg, 0.0), std::invalid_argument);
    }
}

TEST_CASE("single strong target yields one dominant cluster containing the true cell") {
    const auto cfg = paper_config();
    const auto res = radar::derive_resolutions(cfg);
    const radar::Target t{2.8, 0.6, deg2rad(15.0), deg2rad(5.0), 1.0};
    const auto cube = radar::synth_if_cube(cfg, {t}, 0.01, 1, 11);
    const auto map = range_doppler_map(cube, cfg);
    const auto cloud = extract_points(map, cfg, 8.0);

    REQUIRE(!cloud.points.empty());
    const int true_r = static_cast<int>(std::round(t.range / res.range_resolution));
    const int true_d = map.doppler_bins / 2 + static_cast<int>(std::round(t.velocity / res.velocity_resolution));

    bool has_true_cell = false;
    for (const auto& p : cloud.points) {
        const int r = static_cast<int>(std::round(p.range / res.range_resolution));
        const int d = map.doppler_bins / 2 + static_cast<int>(std::round(p.velocity / res.velocity_resolution));
        if (std::abs(r - true_r) <= 1 && std::abs(d - true_d) <= 1) has_true_cell = true;
        // Every detection sits near the single scatterer (one cluster).
        CHECK(std::abs(r - true_r) <= 12);
        CHECK(std::abs(d - true_d) <= 12);
    }
    CHECK(has_true_cell);
}

TEST_CASE("end-to-end oracle: random noiseless targets recovered within one bin") {
    const auto cfg = paper_config();
    const auto res = radar::derive_resolutions(cfg);
    const dsp::SteeringTable table(cfg, {});
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ur(0.5, res.max_range * 0.9);
    // Gesture-scale radial speeds; the target still migrates up to 1.5 range
    // bins within a frame, so range is referenced to the frame center.
    std::uniform_real_distribution<double> uv(-1.5, 1.5);
    std::uniform_real_distribution<double> ua(-deg2rad(55.0), deg2rad(55.0));
    std::uniform_real_distribution<double> ue(-deg2rad(25.0), deg2rad(25.0));

    // Range walk makes the beat frequency drift chirp to chirp, biasing the
    // measured Doppler by slope * (sampled window / 2) * lambda / c relative
    // to the true radial velocity (about 2.5% at this waveform).
    const double walk = cfg.chirp_slope * (cfg.samples_per_chirp / cfg.adc_rate / 2.0) *
                        res.wavelength / kSpeedOfLight;

    for (int i = 0; i < 10; ++i) {
        const radar::Target t{ur(rng), uv(rng), ua(rng), ue(rng), 1.0};
        const auto map = range_doppler_map(radar::synth_if_cube(cfg, {t}, 0.0), cfg);
        int d = 0;
        const int r = argmax_range_bin(map, &d);
        const double range = r * res.range_resolution;
        const double velocity = (d - map.doppler_bins / 2) * res.velocity_resolution;
        const double range_mid_frame = t.range + t.velocity * cfg.frame_period / 2.0;
        CHECK(std::abs(range - range_mid_frame) <= res.range_resolution);
        CHECK(std::abs(velocity - t.velocity * (1.0 + walk)) <= res.velocity_resolution);

        const auto est = beamform_angles(map, r, d, table);
        CHECK(std::abs(est.azimuth - t.azimuth) <= deg2rad(1.0) + 1e-12);
        CHECK(std::abs(est.elevation - t.elevation) <= deg2rad(1.0) + 1e-12);
    }
}
