#pragma once

#include <string>
#include <vector>

#include "vneq/types.hpp"

namespace vneq::io {

/// Matrix JSON format used repo-wide:
///   {"dim": d, "entries": [[[re,im], ...], ...]}
/// with d rows of d [re, im] pairs. Ragged rows and non-finite values are
/// rejected.
CMat matrix_from_json_string(const std::string& text);
std::string matrix_to_json_string(const CMat& m);

CMat read_matrix_json(const std::string& path);
void write_matrix_json(const std::string& path, const CMat& m);

enum class CsvMode { observables, full_matrix };

/// Trajectory CSV. Observables mode: header `t,<obs1>,<obs2>,...` with the
/// named series in lexicographic order. Full-matrix mode: header
/// `t,re_00,im_00,re_01,...` row-major. Values carry 17 significant digits.
std::string trajectory_to_csv(const Trajectory& traj, CsvMode mode);
void write_trajectory_csv(const std::string& path, const Trajectory& traj, CsvMode mode);

/// Complex scalars on the command line: "a+bi" with optional signs, plain
/// reals, and the shorthands "i", "-i", "2i". Non-finite values are rejected.
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

/// Whole-file atomic write (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace vneq::io
