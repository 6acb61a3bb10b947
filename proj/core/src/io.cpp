#include "vneq/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vneq::io {

using nlohmann::json;

namespace {

std::string format_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_number(const std::string& text, const char* what) {
  if (text.empty()) throw std::invalid_argument(std::string(what) + ": empty number");
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  }
  if (consumed != text.size()) {
    throw std::invalid_argument(std::string(what) + ": trailing characters in '" + text + "'");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": non-finite value '" + text + "'");
  }
  return v;
}

}  // namespace

CMat matrix_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON: parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    throw std::invalid_argument("matrix JSON: expected object with 'dim' and 'entries'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
    throw std::invalid_argument("matrix JSON: 'dim' must be a positive integer");
  }
  const long d = doc["dim"].get<long>();
  const auto& rows = doc["entries"];
  if (!rows.is_array() || static_cast<long>(rows.size()) != d) {
    throw std::invalid_argument("matrix JSON: 'entries' must hold exactly dim rows");
  }
  CMat m(d, d);
  for (long i = 0; i < d; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<long>(row.size()) != d) {
      throw std::invalid_argument("matrix JSON: ragged row " + std::to_string(i));
    }
    for (long j = 0; j < d; ++j) {
      const auto& pair = row[j];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw std::invalid_argument("matrix JSON: entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be a [re, im] pair");
      }
      const double re = pair[0].get<double>();
      const double im = pair[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument("matrix JSON: non-finite entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

std::string matrix_to_json_string(const CMat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix JSON: only square matrices are serialized");
  }
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  json doc{{"dim", m.rows()}, {"entries", std::move(rows)}};
  return doc.dump(2) + "\n";
}

CMat read_matrix_json(const std::string& path) { return matrix_from_json_string(read_file(path)); }

void write_matrix_json(const std::string& path, const CMat& m) {
  atomic_write(path, matrix_to_json_string(m));
}

std::string trajectory_to_csv(const Trajectory& traj, CsvMode mode) {
  traj.validate();
  std::ostringstream out;
  if (mode == CsvMode::observables) {
    out << "t";
    for (const auto& [name, series] : traj.observables) {
      out << "," << name;
    }
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      out << format_17g(traj.times[i]);
      for (const auto& [name, series] : traj.observables) {
        out << "," << format_17g(series[i]);
      }
      out << "\n";
    }
  } else {
    const int d = traj.dim();
    out << "t";
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        out << ",re_" << i << j << ",im_" << i << j;
      }
    }
    out << "\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      out << format_17g(traj.times[s]);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          out << "," << format_17g(traj.states[s](i, j).real()) << ","
              << format_17g(traj.states[s](i, j).imag());
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, CsvMode mode) {
  atomic_write(path, trajectory_to_csv(traj, mode));
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("complex: empty string");

  if (s.back() != 'i') {
    return Complex(parse_number(s, "complex real part"), 0.0);
  }
  s.pop_back();

  // Split at the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t pos = s.size(); pos-- > 1;) {
    const char c = s[pos];
    if ((c == '+' || c == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
      split = pos;
      break;
    }
  }

  const auto imag_coeff = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_number(part, "complex imaginary part");
  };

  if (split == std::string::npos) {
    return Complex(0.0, imag_coeff(s));
  }
  const double re = parse_number(s.substr(0, split), "complex real part");
  return Complex(re, imag_coeff(s.substr(split)));
}

std::string format_complex(Complex z) {
  std::string out = format_17g(z.real());
  out += (z.imag() < 0.0 ? "-" : "+");
  out += format_17g(std::abs(z.imag()));
  out += "i";
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp);
    f << content;
    if (!f.good()) throw std::runtime_error("atomic_write: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("atomic_write: rename to " + path + " failed");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace vneq::io
