#include "nslab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nslab {

namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace

LabConfig parse_config_text(const std::string& text, const std::string& origin) {
    LabConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto num = [&](const char* what) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(val, &pos);
                if (pos != val.size()) throw std::invalid_argument(val);
                return v;
            } catch (const std::exception&) {
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": bad " +
                                         std::string(what) + " value '" + val + "'");
            }
        };
        if (key == "preset")
            cfg.sim.preset = preset_from_string(val);
        else if (key == "N")
            cfg.sim.N = int(num("N"));
        else if (key == "eps")
            cfg.sim.eps = num("eps");
        else if (key == "dt")
            cfg.sim.dt = num("dt");
        else if (key == "T")
            cfg.sim.T = num("T");
        else if (key == "z")
            cfg.sim.z = num("z");
        else if (key == "delta")
            cfg.sim.delta = num("delta");
        else if (key == "a")
            cfg.sim.a = num("a");
        else if (key == "b")
            cfg.sim.b = num("b");
        else if (key == "L0")
            cfg.sim.L0 = num("L0");
        else if (key == "seed")
            cfg.sim.seed = std::uint64_t(num("seed"));
        else if (key == "L")
            cfg.sim.L = num("L");
        else if (key == "out_dir")
            cfg.out_dir = val;
        else
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (cfg.sim.dt <= 0.0) throw std::runtime_error(origin + ": dt must be > 0");
    if (cfg.sim.L <= 0.0) throw std::runtime_error(origin + ": L must be > 0");
    if (!(cfg.sim.z > 0.5 && cfg.sim.z < 1.0))
        throw std::runtime_error(origin + ": z must lie in (1/2, 1)");
    return cfg;
}

LabConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string config_to_string(const LabConfig& cfg) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "preset=%s\nN=%d\neps=%.17g\ndt=%.17g\nT=%.17g\nz=%.17g\ndelta=%.17g\n"
                  "a=%.17g\nb=%.17g\nL0=%.17g\nseed=%llu\nL=%.17g\nout_dir=%s\n",
                  to_string(cfg.sim.preset).c_str(), cfg.sim.N, cfg.sim.eps, cfg.sim.dt, cfg.sim.T,
                  cfg.sim.z, cfg.sim.delta, cfg.sim.a, cfg.sim.b, cfg.sim.L0,
                  (unsigned long long)cfg.sim.seed, cfg.sim.L, cfg.out_dir.c_str());
    return buf;
}

}  // namespace nslab
