#include "lw/mesh_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace lw {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  return out;
}

void write_header_comments(const SurfaceGrid& s, std::ofstream& out) {
  out << "# timelike surface mesh, Minkowski 3-space\n";
  out << "# signature (-,+,+): columns are x1 x2 x3 with x1 timelike\n";
  out << "# grid nu=" << s.nu << " nv=" << s.nv << " u=[" << format_double(s.rect.u0) << ","
      << format_double(s.rect.u1) << "] v=[" << format_double(s.rect.v0) << ","
      << format_double(s.rect.v1) << "]\n";
  int flagged = 0;
  for (auto f : s.flags) {
    if (f != kFlagNone) ++flagged;
  }
  out << "# flagged nodes: " << flagged << "\n";
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      if (s.flag(i, j) != kFlagNone) {
        out << "# flag " << i << " " << j << " " << static_cast<int>(s.flag(i, j)) << "\n";
      }
    }
  }
}

}  // namespace

void write_obj(const SurfaceGrid& s, const std::string& path) {
  std::ofstream out = open_out(path);
  write_header_comments(s, out);
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      const Vec3L& p = s.at(i, j);
      out << "v " << format_double(p.x1) << " " << format_double(p.x2) << " "
          << format_double(p.x3) << "\n";
    }
  }
  // Quad (i,j)-(i+1,j)-(i+1,j+1)-(i,j+1) split into two triangles; OBJ
  // indices are 1-based, row-major.
  auto vid = [&](int i, int j) { return i * s.nv + j + 1; };
  for (int i = 0; i + 1 < s.nu; ++i) {
    for (int j = 0; j + 1 < s.nv; ++j) {
      out << "f " << vid(i, j) << " " << vid(i + 1, j) << " " << vid(i + 1, j + 1) << "\n";
      out << "f " << vid(i, j) << " " << vid(i + 1, j + 1) << " " << vid(i, j + 1) << "\n";
    }
  }
}

void write_csv(const SurfaceGrid& s, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "u,v,x1,x2,x3,flag\n";
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      const Vec3L& p = s.at(i, j);
      out << format_double(s.u_at(i)) << "," << format_double(s.v_at(j)) << ","
          << format_double(p.x1) << "," << format_double(p.x2) << "," << format_double(p.x3)
          << "," << static_cast<int>(s.flag(i, j)) << "\n";
    }
  }
}

void write_json(const SurfaceGrid& s, const std::string& path) {
  nlohmann::ordered_json j;
  j["signature"] = "(-,+,+)";
  j["nu"] = s.nu;
  j["nv"] = s.nv;
  j["domain"] = {s.rect.u0, s.rect.u1, s.rect.v0, s.rect.v1};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < s.nu; ++i) {
    for (int jx = 0; jx < s.nv; ++jx) {
      const Vec3L& p = s.at(i, jx);
      rows.push_back({p.x1, p.x2, p.x3});
    }
  }
  j["positions"] = std::move(rows);
  nlohmann::ordered_json fl = nlohmann::ordered_json::array();
  for (auto f : s.flags) fl.push_back(static_cast<int>(f));
  j["flags"] = std::move(fl);
  std::ofstream out = open_out(path);
  out << j.dump(0) << "\n";
}

StringState read_string_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open initial-data file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed initial-data JSON: ") + e.what());
  }
  StringState st;
  try {
    st.sigma0 = j.at("sigma0").get<double>();
    st.sigma1 = j.at("sigma1").get<double>();
    if (j.contains("tension")) st.tension = j["tension"].get<double>();
    for (const auto& row : j.at("position")) {
      st.position.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                             row.at(2).get<double>()});
    }
    for (const auto& row : j.at("velocity")) {
      st.velocity.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                             row.at(2).get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("initial-data JSON missing fields: ") + e.what());
  }
  return st;
}

}  // namespace lw
