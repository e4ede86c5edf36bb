#pragma once

#include <string>

#include "koopcore/snapshots.hpp"
#include "koopcore/types.hpp"

namespace koop {

// All writers are atomic: content goes to a temp file in the target directory
// which is then renamed over the destination, so a crash never leaves a
// partial artifact.  Numbers are serialized with 17 significant digits, which
// round-trips IEEE doubles exactly and keeps reruns byte-identical.

std::string format_double(double v);  // %.17g

void write_text_atomic(const std::string& path, const std::string& content);

// Snapshot CSV: one row per snapshot, columns x0..x{n-1}, optional header.
// dt and the meta tag travel in a sidecar JSON file "<path>.meta.json".
void write_snapshot_csv(const std::string& path, const SnapshotMatrix& snap,
                        bool header = true);
// dt_fallback applies when no sidecar file exists.
SnapshotMatrix read_snapshot_csv(const std::string& path, double dt_fallback = 1.0);

// Complex matrix CSV: column pairs c<j>_re, c<j>_im with a header row.
void write_complex_csv(const std::string& path, const Matrix& m);
Matrix read_complex_csv(const std::string& path);

}  // namespace koop
