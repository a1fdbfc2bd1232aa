#include "wbglimm_cli/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wbglimm::cli {

namespace {

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r");
    const auto e = item.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double x = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return x;
}

// Column indices of r, rho, v in a header row.
std::array<std::size_t, 3> locate(const std::vector<std::string>& header) {
  std::array<std::size_t, 3> idx{};
  const char* names[3] = {"r", "rho", "v"};
  for (int c = 0; c < 3; ++c) {
    std::size_t i = 0;
    while (i < header.size() && header[i] != names[c]) ++i;
    if (i == header.size()) throw std::runtime_error(std::string("missing column ") + names[c]);
    idx[c] = i;
  }
  return idx;
}

std::vector<std::array<double, 3>> read_rows(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty file");
  const auto idx = locate(fields(line));
  std::vector<std::array<double, 3>> rows;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = fields(line);
    std::array<double, 3> row{};
    for (int c = 0; c < 3; ++c) {
      if (idx[c] >= f.size()) throw std::runtime_error("short row: " + line);
      row[c] = to_double(f[idx[c]]);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void write_snapshot_csv(std::ostream& os, const Snapshot& s, const ModelParams& p) {
  os << "r,rho,v,w,z\n" << std::setprecision(17);
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    const FluidState& u = s.u[i];
    const double klog = p.k * std::log(u.rho);
    os << s.r[i] << ',' << u.rho << ',' << u.v << ',' << u.v + klog << ',' << u.v - klog << '\n';
  }
}

Snapshot read_snapshot_csv(std::istream& is) {
  Snapshot s{0.0, {}, {}, {}};
  for (const auto& row : read_rows(is)) {
    s.r.push_back(row[0]);
    s.u.push_back({row[1], row[2]});
  }
  return s;
}

void write_snapshots_json(std::ostream& os, const std::vector<Snapshot>& snaps,
                          const ModelParams& p) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Snapshot& s : snaps) {
    nlohmann::json e;
    std::vector<double> rho, v, w, z;
    for (const FluidState& u : s.u) {
      const double klog = p.k * std::log(u.rho);
      rho.push_back(u.rho);
      v.push_back(u.v);
      w.push_back(u.v + klog);
      z.push_back(u.v - klog);
    }
    e["t"] = s.t;
    e["r"] = s.r;
    e["rho"] = rho;
    e["v"] = v;
    e["w"] = w;
    e["z"] = z;
    e["jumps"] = s.jumps;
    doc.push_back(std::move(e));
  }
  os << doc.dump(1) << '\n';
}

void write_tv_csv(std::ostream& os, const TvLog& log) {
  os << "n,t,dt,tv_lnrho,tv_v\n" << std::setprecision(17);
  for (const TvRecord& r : log.records) {
    os << r.n << ',' << r.t << ',' << r.dt << ',' << r.tv_lnrho << ',' << r.tv_v << '\n';
  }
}

std::vector<std::array<double, 3>> read_table_csv(std::istream& is) { return read_rows(is); }

std::string tag_name(SteadyTag tag) {
  switch (tag) {
    case SteadyTag::GlobalSmooth: return "GlobalSmooth";
    case SteadyTag::Critical: return "Critical";
    case SteadyTag::SonicLimited: return "SonicLimited";
    case SteadyTag::Static: return "Static";
    default: return "Constant";
  }
}

std::string branch_name(CriticalBranch b) {
  switch (b) {
    case CriticalBranch::PFlat: return "P-flat";
    case CriticalBranch::PSharp: return "P-sharp";
    case CriticalBranch::NFlat: return "N-flat";
    default: return "N-sharp";
  }
}

}  // namespace wbglimm::cli
