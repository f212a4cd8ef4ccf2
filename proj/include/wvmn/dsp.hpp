#pragma once

#include <complex>
#include <vector>

#include "wvmn/common.hpp"
#include "wvmn/radar.hpp"

namespace wvmn::dsp {

struct Point5D {
    double amplitude = 0.0;
    double range = 0.0;      // m
    double velocity = 0.0;   // m/s
    double azimuth = 0.0;    // rad
    double elevation = 0.0;  // rad
    double x = 0.0, y = 0.0, z = 0.0;
};

struct PointCloud5D {
    int frame_index = 0;
    double timestamp = 0.0;  // s
    std::vector<Point5D> points;
};

/// Fixed coordinate convention used everywhere downstream:
/// y = boresight, x = right, z = up.
Vec3 to_cartesian(double range, double azimuth, double elevation);

/// Inverse of to_cartesian. Range 0 maps to zero angles.
void from_cartesian(const Vec3& p, double& range, double& azimuth, double& elevation);

/// Rebuilds a point's spherical and Cartesian fields from Cartesian coords.
Point5D point_from_cartesian(double amplitude, const Vec3& p, double velocity);

/// Rebuilds a point's Cartesian fields from spherical coords.
Point5D point_from_spherical(double amplitude, double range, double azimuth, double elevation,
                             double velocity);

/// Complex range-Doppler cells per virtual channel; (samples/2) range bins,
/// Doppler axis fftshifted so zero velocity sits at bin chirps/2. The 2D
/// transform is scaled to be unitary, so cell energy matches windowed
/// time-domain energy.
struct RangeDopplerMap {
    int channels = 0;
    int range_bins = 0;
    int doppler_bins = 0;
    radar::ResolutionSpec res;
    std::vector<std::complex<double>> cells;  // [channel][range][doppler]

    size_t index(int ch, int r, int d) const {
        return (static_cast<size_t>(ch) * range_bins + r) * doppler_bins + d;
    }
    const std::complex<double>& at(int ch, int r, int d) const { return cells[index(ch, r, d)]; }
    std::complex<double>& at(int ch, int r, int d) { return cells[index(ch, r, d)]; }

    /// Noncoherent sum of channel magnitudes at one cell.
    double channel_sum_magnitude(int r, int d) const;
};

/// Periodic Hann window, w[n] = 0.5 * (1 - cos(2*pi*n/N)).
std::vector<double> hann_window(int n);

/// Hann-windowed fast-time FFT then Hann-windowed slow-time FFT for one
/// frame of the cube. Throws std::invalid_argument on dimension mismatch.
RangeDopplerMap range_doppler_map(const radar::IqCube& cube, const radar::RadarConfig& config,
                                  int frame = 0);

struct BeamformOptions {
    double step = deg2rad(1.0);
    double span = deg2rad(60.0);  // scan covers [-span, +span] on both axes
};

struct AngleEstimate {
    double azimuth = 0.0;
    double elevation = 0.0;
    double power = 0.0;
};

/// Precomputed steering phasors over the scan grid; reusable across cells
/// and maps for one array geometry.
class SteeringTable {
  public:
    SteeringTable(const radar::RadarConfig& config, const BeamformOptions& options);

    int grid_size() const { return static_cast<int>(angles_.size()); }
    double angle(int i) const { return angles_[i]; }
    const std::complex<double>* phasors(int az_idx, int el_idx) const;
    int channels() const { return channels_; }

  private:
    int channels_;
    std::vector<double> angles_;
    std::vector<std::complex<double>> conj_steering_;  // [el][az][channel]
};

/// 2D steering-vector scan at one map cell; returns the argmax angles and
/// the steering power there. Throws std::out_of_range for bad cells.
AngleEstimate beamform_angles(const RangeDopplerMap& map, int range_bin, int doppler_bin,
                              const radar::RadarConfig& config, const BeamformOptions& options = {});
AngleEstimate beamform_angles(const RangeDopplerMap& map, int range_bin, int doppler_bin,
                              const SteeringTable& table);

/// Threshold detection against threshold_factor times the median
/// channel-sum magnitude, followed by per-cell beamforming. Range bin 0 is
/// skipped (zero range is outside the point-cloud domain).
PointCloud5D extract_points(const RangeDopplerMap& map, const radar::RadarConfig& config,
                            double threshold_factor, const BeamformOptions& options = {});
PointCloud5D extract_points(const RangeDopplerMap& map, const radar::RadarConfig& config,
                            double threshold_factor, const SteeringTable& table);

}  // namespace wvmn::dsp
