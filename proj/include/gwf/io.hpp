#ifndef GWF_IO_HPP
#define GWF_IO_HPP

#include "gwf/grid.hpp"

#include <string>

namespace gwf {

struct StftMatrix;  // stft.hpp

// Fixed 17-significant-digit decimal rendering; identical configs must give
// bit-identical text outputs.
std::string fmt_g17(double v);

// Signal binary layout: u32 d, u32 n, f64 L, then n^d interleaved
// little-endian float64 (re, im) pairs.
void write_signal_bin(const std::string& path, const SampledSignal& s);
SampledSignal read_signal_bin(const std::string& path);

// Signal CSV: header then one row per node, "x,re,im" (d=1) or
// "x1,x2,re,im" (d=2).
void write_signal_csv(const std::string& path, const SampledSignal& s);

// StftMatrix binary: u32 d, u32 nshift, f64 Lshift, u32 nfreq, f64 freqmax,
// then row-major (shift-major) float64 pairs.
void write_stft_bin(const std::string& path, const StftMatrix& m);
StftMatrix read_stft_bin(const std::string& path);

// StftMatrix CSV rows: x,xi,re,im.
void write_stft_csv(const std::string& path, const StftMatrix& m);

// Log-modulus heatmap: 8-bit P5 PGM (rows = frequencies top-down, columns =
// shifts) plus a CSV of log10 moduli. Values are clamped to
// [log10(floor), max].
void write_stft_heatmap_pgm(const std::string& path, const StftMatrix& m, double floor_linear);
void write_stft_logmod_csv(const std::string& path, const StftMatrix& m, double floor_linear);

} // namespace gwf

#endif
