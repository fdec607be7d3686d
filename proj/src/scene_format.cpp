#include "ldh/scene_format.hpp"

#include <fstream>
#include <sstream>

#include "ldh/csv.hpp"

namespace ldh {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string token;
    while (ss >> token) out.push_back(token);
    return out;
}

double to_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError("scene: bad number '" + s + "' in " + context);
    }
}

Index to_index(const std::string& s, const std::string& context) {
    const double v = to_double(s, context);
    return static_cast<Index>(v);
}

VesselShape parse_vessel(const std::vector<std::string>& args) {
    if (args.empty()) throw FormatError("scene: empty vessel entry");
    VesselShape vessel;
    if (args[0] == "disk") {
        if (args.size() != 6) throw FormatError("scene: vessel disk needs 5 parameters");
        vessel.kind = VesselShape::Kind::Disk;
        vessel.cx = to_double(args[1], "vessel");
        vessel.cy = to_double(args[2], "vessel");
        vessel.r0 = to_double(args[3], "vessel");
        vessel.bandwidth_hz = to_double(args[4], "vessel");
        vessel.sigma = to_double(args[5], "vessel");
    } else if (args[0] == "rect") {
        if (args.size() != 7) throw FormatError("scene: vessel rect needs 6 parameters");
        vessel.kind = VesselShape::Kind::Rect;
        vessel.x0 = to_double(args[1], "vessel");
        vessel.y0 = to_double(args[2], "vessel");
        vessel.x1 = to_double(args[3], "vessel");
        vessel.y1 = to_double(args[4], "vessel");
        vessel.bandwidth_hz = to_double(args[5], "vessel");
        vessel.sigma = to_double(args[6], "vessel");
    } else if (args[0] == "annulus") {
        if (args.size() != 7) throw FormatError("scene: vessel annulus needs 6 parameters");
        vessel.kind = VesselShape::Kind::Annulus;
        vessel.cx = to_double(args[1], "vessel");
        vessel.cy = to_double(args[2], "vessel");
        vessel.r0 = to_double(args[3], "vessel");
        vessel.r1 = to_double(args[4], "vessel");
        vessel.bandwidth_hz = to_double(args[5], "vessel");
        vessel.sigma = to_double(args[6], "vessel");
    } else {
        throw FormatError("scene: unknown vessel shape '" + args[0] + "'");
    }
    return vessel;
}

}  // namespace

SynthScene parse_scene(std::istream& in) {
    SynthScene scene;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw FormatError("scene: malformed line '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::vector<std::string> args = split_ws(value);

        if (key == "nx") scene.nx = to_index(value, key);
        else if (key == "ny") scene.ny = to_index(value, key);
        else if (key == "nt") scene.nt = to_index(value, key);
        else if (key == "fs") scene.fs = to_double(value, key);
        else if (key == "seed") scene.seed = static_cast<std::uint64_t>(to_double(value, key));
        else if (key == "background_amplitude") scene.background_amplitude = to_double(value, key);
        else if (key == "pulse_hz") scene.pulse_hz = to_double(value, key);
        else if (key == "pulse_depth") scene.pulse_depth = to_double(value, key);
        else if (key == "clutter_wobble") scene.clutter_wobble = to_double(value, key);
        else if (key == "noise_amplitude") scene.noise_amplitude = to_double(value, key);
        else if (key == "vessel") scene.vessels.push_back(parse_vessel(args));
        else if (key == "clutter") {
            if (args.size() != 5) throw FormatError("scene: clutter needs 5 parameters");
            ClutterBurst burst;
            burst.start = to_index(args[0], key);
            burst.duration = to_index(args[1], key);
            burst.center_hz = to_double(args[2], key);
            burst.amplitude = to_double(args[3], key);
            if (args[4] == "uniform") burst.pattern = ClutterBurst::Pattern::Uniform;
            else if (args[4] == "smooth") burst.pattern = ClutterBurst::Pattern::Smooth;
            else throw FormatError("scene: unknown clutter pattern '" + args[4] + "'");
            scene.clutter.push_back(burst);
        } else if (key == "jitter") {
            if (args.size() != 4 && args.size() != 5)
                throw FormatError("scene: jitter needs 4 or 5 parameters");
            JitterSpec spec;
            spec.x = to_index(args[0], key);
            spec.y = to_index(args[1], key);
            spec.carrier_hz = to_double(args[2], key);
            spec.amplitude = to_double(args[3], key);
            if (args.size() == 5) spec.chip_frames = to_index(args[4], key);
            scene.jitter = spec;
        } else {
            throw FormatError("scene: unknown key '" + key + "'");
        }
    }
    validate(scene);
    return scene;
}

SynthScene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open scene '" + path + "'");
    return parse_scene(in);
}

void save_scene(const SynthScene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << "nx = " << scene.nx << "\nny = " << scene.ny << "\nnt = " << scene.nt
        << "\nfs = " << scene.fs << "\nseed = " << scene.seed
        << "\nbackground_amplitude = " << scene.background_amplitude << "\n";
    if (scene.pulse_hz > 0.0)
        out << "pulse_hz = " << scene.pulse_hz << "\npulse_depth = " << scene.pulse_depth << "\n";
    if (scene.clutter_wobble > 0.0) out << "clutter_wobble = " << scene.clutter_wobble << "\n";
    if (scene.noise_amplitude > 0.0) out << "noise_amplitude = " << scene.noise_amplitude << "\n";
    for (const auto& vessel : scene.vessels) {
        out << "vessel = ";
        switch (vessel.kind) {
            case VesselShape::Kind::Disk:
                out << "disk " << vessel.cx << " " << vessel.cy << " " << vessel.r0;
                break;
            case VesselShape::Kind::Rect:
                out << "rect " << vessel.x0 << " " << vessel.y0 << " " << vessel.x1 << " "
                    << vessel.y1;
                break;
            case VesselShape::Kind::Annulus:
                out << "annulus " << vessel.cx << " " << vessel.cy << " " << vessel.r0 << " "
                    << vessel.r1;
                break;
        }
        out << " " << vessel.bandwidth_hz << " " << vessel.sigma << "\n";
    }
    for (const auto& burst : scene.clutter)
        out << "clutter = " << burst.start << " " << burst.duration << " " << burst.center_hz
            << " " << burst.amplitude << " "
            << (burst.pattern == ClutterBurst::Pattern::Uniform ? "uniform" : "smooth") << "\n";
    if (scene.jitter)
        out << "jitter = " << scene.jitter->x << " " << scene.jitter->y << " "
            << scene.jitter->carrier_hz << " " << scene.jitter->amplitude << " "
            << scene.jitter->chip_frames << "\n";
    if (!out) throw FormatError("short write to '" + path + "'");
}

void write_ground_truth(const GroundTruth& truth, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << "# ground truth\n";
    out << "nx = " << truth.nx << "\nny = " << truth.ny << "\nnt = " << truth.nt
        << "\nfs = " << truth.fs << "\n";
    for (const auto& burst : truth.bursts)
        out << "burst = " << burst.start << " " << burst.duration << " " << burst.center_hz
            << " " << burst.amplitude << "\n";
    out << "[envelope]\n";
    for (Index t = 0; t < truth.envelope.size(); ++t) out << truth.envelope[t] << "\n";
    auto emit_grid = [&out](const char* name, const Mat<double>& grid) {
        out << "[" << name << "]\n";
        for (Index y = 0; y < grid.cols(); ++y) {
            for (Index x = 0; x < grid.rows(); ++x) {
                if (x) out << ",";
                out << grid(x, y);
            }
            out << "\n";
        }
    };
    emit_grid("blood_sigma2", truth.blood_sigma2);
    emit_grid("blood_rho", truth.blood_rho);
    if (truth.jitter_pattern_abs.size() > 0)
        emit_grid("jitter_pattern_abs", truth.jitter_pattern_abs);
    if (!out) throw FormatError("short write to '" + path + "'");
}

}  // namespace ldh
