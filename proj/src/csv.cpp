#include "ldh/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ldh {

namespace {

std::ofstream open_text(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    return out;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

}  // namespace

void write_series_csv(const std::string& path, const Eigen::VectorXd& time,
                      const Eigen::VectorXd& power) {
    if (time.size() != power.size()) throw InvalidInput("time/power length mismatch");
    std::ofstream out = open_text(path);
    out << "time_s,power\n";
    char buf[64];
    for (Eigen::Index i = 0; i < time.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6e\n", time[i], power[i]);
        out << buf;
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid) {
    std::ofstream out = open_text(path);
    out << "# nx=" << grid.rows() << " ny=" << grid.cols() << "\n";
    for (Eigen::Index y = 0; y < grid.cols(); ++y) {
        for (Eigen::Index x = 0; x < grid.rows(); ++x) {
            if (x) out << ",";
            out << sci(grid(x, y));
        }
        out << "\n";
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

Eigen::MatrixXd read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.emplace_back();
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                rows.back().push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw FormatError("'" + path + "': bad numeric cell '" + cell + "'");
            }
        }
        if (rows.back().size() != rows.front().size())
            throw FormatError("'" + path + "': ragged rows");
    }
    if (rows.empty()) throw FormatError("'" + path + "': no data rows");
    Eigen::MatrixXd grid(static_cast<Eigen::Index>(rows.front().size()),
                         static_cast<Eigen::Index>(rows.size()));
    for (std::size_t y = 0; y < rows.size(); ++y)
        for (std::size_t x = 0; x < rows[y].size(); ++x)
            grid(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = rows[y][x];
    return grid;
}

void write_spectrogram_csv(const std::string& path, const Eigen::VectorXd& freq_axis,
                           const Eigen::VectorXd& time, const Eigen::MatrixXd& map) {
    if (map.rows() != freq_axis.size() || map.cols() != time.size())
        throw InvalidInput("spectrogram map does not match its axes");
    std::ofstream out = open_text(path);
    out << "freq_hz";
    char buf[32];
    for (Eigen::Index w = 0; w < time.size(); ++w) {
        std::snprintf(buf, sizeof(buf), ",%.6f", time[w]);
        out << buf;
    }
    out << "\n";
    for (Eigen::Index r = 0; r < map.rows(); ++r) {
        out << sci(freq_axis[r]);
        for (Eigen::Index w = 0; w < map.cols(); ++w) out << "," << sci(map(r, w));
        out << "\n";
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

void write_singular_profile_csv(const std::string& path, const Eigen::VectorXd& lambdas) {
    if (lambdas.size() == 0 || !(lambdas[0] > 0.0))
        throw InvalidInput("singular profile needs lambda_1 > 0");
    std::ofstream out = open_text(path);
    out << "index,lambda,db,energy_fraction\n";
    const double total = lambdas.squaredNorm();
    char buf[96];
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
        const double db = lambdas[i] > 0.0 ? 20.0 * std::log10(lambdas[i] / lambdas[0]) : -999.0;
        std::snprintf(buf, sizeof(buf), "%lld,%.6e,%.2f,%.6e\n", static_cast<long long>(i + 1),
                      lambdas[i], db, lambdas[i] * lambdas[i] / total);
        out << buf;
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

}  // namespace ldh
