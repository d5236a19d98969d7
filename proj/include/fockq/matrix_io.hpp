#pragma once

#include <filesystem>
#include <string>

#include "fockq/linalg.hpp"

namespace fockq {

// Writes `data` to `path` atomically: the bytes land in a sibling temp file
// which is then renamed over the target, so readers never observe a
// half-written file.
void atomic_write(const std::filesystem::path& path, const std::string& data);

// Matrix container: row-major complex entries as interleaved little-endian
// float64 (re, im) pairs in `<path>`, described by a JSON sidecar
// `<path>.json` with the shape, a free-form label, and the storage format.
void save_matrix(const std::filesystem::path& path, const Mat& m,
                 const std::string& label);

// Reads a matrix written by save_matrix (shape taken from the sidecar).
Mat load_matrix(const std::filesystem::path& path);

}  // namespace fockq
