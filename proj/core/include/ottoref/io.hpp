#pragma once

#include "ottoref/dynamics.hpp"
#include "ottoref/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ottoref {

/// Header: t,q,thetadot,delta,p_e_frame,coherence,qdot_c,qdot_h,wdot,energy
/// One row per integrator sample, 17 significant digits.
void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj);

/// Header: omega,mode,q_c,q_h,work,eta,pi_c,pi_h,first_law_residual,cycles_to_converge
void write_summary_csv(const std::filesystem::path& file, const std::vector<SweepRow>& rows);
void write_summary_csv(const std::filesystem::path& file, const CycleSummary& summary);

/// Minimal CSV reader: first line is the header, every field parses as a
/// double except the `mode` column. Used by the offline re-summarizer.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  // throws if absent
};
CsvTable read_csv(const std::filesystem::path& file);

/// Re-derive the per-cycle heats, work and efficiency from a trajectory CSV
/// with the same trapezoid quadrature the simulator uses.
struct OfflineSummary {
    double q_c = 0.0, q_h = 0.0, work = 0.0, eta = 0.0;
};
OfflineSummary resummarize_trajectory_csv(const std::filesystem::path& file);

std::string format_g17(double v);

}  // namespace ottoref
