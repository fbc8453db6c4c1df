#include "ottoref/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ottoref {

namespace {

std::ofstream open_out(const std::filesystem::path& file)
{
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
    return os;
}

void write_summary_fields(std::ostream& os, double omega, Mode mode, const CycleSummary* s,
                          int cycles)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    os << format_g17(omega) << ',' << to_string(mode);
    const double fields[7] = {s ? s->q_c : nan, s ? s->q_h : nan,  s ? s->work : nan,
                              s ? s->eta : nan, s ? s->pi_c : nan, s ? s->pi_h : nan,
                              s ? s->first_law_residual : nan};
    for (double f : fields) os << ',' << format_g17(f);
    os << ',' << cycles << '\n';
}

constexpr char kSummaryHeader[] =
    "omega,mode,q_c,q_h,work,eta,pi_c,pi_h,first_law_residual,cycles_to_converge";

}  // namespace

std::string format_g17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj)
{
    std::ofstream os = open_out(file);
    os << "t,q,thetadot,delta,p_e_frame,coherence,qdot_c,qdot_h,wdot,energy\n";
    for (const FluxRecord& r : traj.flux) {
        const double fields[10] = {r.t,         r.q,      r.thetadot, r.delta, r.p_e_frame,
                                   r.coherence, r.qdot_c, r.qdot_h,   r.wdot,  r.energy};
        for (int i = 0; i < 10; ++i) os << (i ? "," : "") << format_g17(fields[i]);
        os << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& file, const std::vector<SweepRow>& rows)
{
    std::ofstream os = open_out(file);
    os << kSummaryHeader << '\n';
    for (const SweepRow& row : rows)
        write_summary_fields(os, row.omega, row.mode, row.summary ? &*row.summary : nullptr,
                             row.summary ? row.summary->cycles_to_converge : 0);
}

void write_summary_csv(const std::filesystem::path& file, const CycleSummary& summary)
{
    std::ofstream os = open_out(file);
    os << kSummaryHeader << '\n';
    write_summary_fields(os, summary.omega, summary.mode, &summary, summary.cycles_to_converge);
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::runtime_error("csv: no column named '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open for reading: " + file.string());

    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty file " + file.string());
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.header.size());
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        if (row.size() != table.header.size())
            throw std::runtime_error("csv: ragged row in " + file.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

OfflineSummary resummarize_trajectory_csv(const std::filesystem::path& file)
{
    const CsvTable table = read_csv(file);
    const std::size_t it = table.column("t");
    const std::size_t ic = table.column("qdot_c");
    const std::size_t ih = table.column("qdot_h");
    const std::size_t iw = table.column("wdot");

    OfflineSummary s;
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
        const double dt = table.rows[i + 1][it] - table.rows[i][it];
        s.q_c += 0.5 * (table.rows[i][ic] + table.rows[i + 1][ic]) * dt;
        s.q_h += 0.5 * (table.rows[i][ih] + table.rows[i + 1][ih]) * dt;
        s.work += 0.5 * (table.rows[i][iw] + table.rows[i + 1][iw]) * dt;
    }
    const double total = s.q_h + s.q_c;
    s.eta = std::abs(total) < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : -s.q_c / total;
    return s;
}

}  // namespace ottoref
