// io.cpp
#include "corrsense/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace corrsense::io {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += fmt_full(m(r, c));
    }
    out += "\n";
  }
  return out;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  write_text_file(path, matrix_csv(m));
}

std::string resolve_out_dir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    const char* env = std::getenv("CORRSENSE_OUT_DIR");
    if (env != nullptr) dir = env;
  }
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
  }
  return dir;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const nlohmann::json& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double wall_time_s) {
  nlohmann::json m;
  m["command"] = command;
  m["parameters"] = params;
  m["seed"] = seed;
  m["version"] = kVersion;
  m["outputs"] = outputs;
  m["wall_time_s"] = wall_time_s;
  write_text_file(out_dir + "/manifest.json", m.dump(2) + "\n");
}

}  // namespace corrsense::io
