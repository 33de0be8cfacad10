#ifndef DLAB_SERIALIZE_HPP
#define DLAB_SERIALIZE_HPP

#include <filesystem>
#include <map>
#include <string>

#include "dlab/evolve.hpp"
#include "dlab/field.hpp"

namespace dlab {

// CSV: header "x,re,im", one row per sample, %.17g (lossless round trip).
void write_field_csv(const Field& f, const std::filesystem::path& path);
Field read_field_csv(const std::filesystem::path& path);

// Binary: u64 num_points, f64 box_length, then interleaved (re, im) f64 pairs,
// all little-endian.
void write_field_binary(const Field& f, const std::filesystem::path& path);
Field read_field_binary(const std::filesystem::path& path);

// Directory of per-sample binary dumps (sample_NNNN_cK.bin) plus a plain
// key=value manifest.txt describing the equation and the time stamps.
void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir);
Trajectory read_trajectory(const std::filesystem::path& dir);

// shared key=value helpers (manifests, experiment configs)
void write_kv(const std::map<std::string, std::string>& kv,
              const std::filesystem::path& path);
std::map<std::string, std::string> read_kv(const std::filesystem::path& path);

} // namespace dlab

#endif
