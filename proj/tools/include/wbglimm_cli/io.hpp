#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "wbglimm/glimm.hpp"
#include "wbglimm/steady.hpp"

namespace wbglimm::cli {

/// Columns r,rho,v,w,z with a header row, 17 significant digits.
void write_snapshot_csv(std::ostream& os, const Snapshot& s, const ModelParams& p);

/// Reads the r, rho and v columns written by write_snapshot_csv; t and the
/// jump list are not part of the file and stay empty.
Snapshot read_snapshot_csv(std::istream& is);

/// All snapshots as one JSON document: t, r, rho, v, w, z and jumps per entry.
void write_snapshots_json(std::ostream& os, const std::vector<Snapshot>& snaps,
                          const ModelParams& p);

/// Columns n,t,dt,tv_lnrho,tv_v.
void write_tv_csv(std::ostream& os, const TvLog& log);

/// Reads an r,rho,v table (header row required, extra columns ignored).
std::vector<std::array<double, 3>> read_table_csv(std::istream& is);

std::string tag_name(SteadyTag tag);
std::string branch_name(CriticalBranch b);

}  // namespace wbglimm::cli
