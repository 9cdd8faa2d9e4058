#include "schlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "schlab/transform.hpp"

namespace fs = std::filesystem;

namespace schlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string make_run_dir(const std::string& output_root) {
    fs::create_directories(output_root);
    for (int i = 1; i < 100000; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "run_%04d", i);
        const fs::path candidate = fs::path(output_root) / name;
        if (!fs::exists(candidate)) {
            fs::create_directory(candidate);
            return candidate.string();
        }
    }
    throw std::runtime_error("make_run_dir: run index space exhausted");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

std::string study_csv(const StudyReport& rep, std::uint64_t seed,
                      const std::string& config_echo) {
    // union of key names, in first-appearance order
    std::vector<std::string> key_names;
    for (const auto& row : rep.rows)
        for (const auto& [k, v] : row.keys)
            if (std::find(key_names.begin(), key_names.end(), k) == key_names.end())
                key_names.push_back(k);

    std::string out;
    out += "# seed=" + std::to_string(seed) + "\n";
    out += "# config=" + config_echo + "\n";
    out += "study";
    for (const auto& k : key_names) out += "," + k;
    out += ",quantity,estimate,se,count\n";
    for (const auto& row : rep.rows) {
        out += row.study;
        for (const auto& k : key_names) {
            out += ",";
            for (const auto& [rk, rv] : row.keys)
                if (rk == k) {
                    out += rv;
                    break;
                }
        }
        out += "," + row.quantity;
        out += "," + format_double(row.estimate);
        out += "," + format_double(row.se);
        out += "," + std::to_string(row.count) + "\n";
    }
    return out;
}

namespace {

std::string frames_csv(const Trajectory& tr, std::uint64_t seed, const std::string& config_echo,
                       const char* col_prefix, bool spectral) {
    std::string out;
    out += "# seed=" + std::to_string(seed) + "\n";
    out += "# config=" + config_echo + "\n";
    out += "time";
    const std::size_t nm = tr.grid.size();
    for (std::size_t i = 0; i < nm; ++i) out += "," + std::string(col_prefix) + std::to_string(i);
    out += "\n";

    for (std::size_t k = 0; k < tr.frames.size(); ++k) {
        out += format_double(tr.times[k]);
        if (spectral) {
            const SpectralField c = to_spectral(tr.frames[k]);
            for (std::size_t i = 0; i < nm; ++i) out += "," + format_double(c.coeffs[i]);
        } else {
            for (std::size_t i = 0; i < nm; ++i) out += "," + format_double(tr.frames[k][i]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr, std::uint64_t seed,
                           const std::string& config_echo) {
    return frames_csv(tr, seed, config_echo, "v", false);
}

std::string trajectory_modes_csv(const Trajectory& tr, std::uint64_t seed,
                                 const std::string& config_echo) {
    return frames_csv(tr, seed, config_echo, "m", true);
}

void write_trajectory_binary(const std::string& path, const Trajectory& tr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const char magic[8] = {'S', 'C', 'H', 'T', 'R', 'J', '0', '1'};
    out.write(magic, 8);
    const std::int32_t hdr[4] = {tr.grid.d, tr.grid.n, tr.grid.nt,
                                 static_cast<std::int32_t>(tr.frames.size())};
    out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    out.write(reinterpret_cast<const char*>(&tr.grid.T), sizeof(double));
    out.write(reinterpret_cast<const char*>(tr.times.data()),
              static_cast<std::streamsize>(tr.times.size() * sizeof(double)));
    for (const auto& f : tr.frames)
        out.write(reinterpret_cast<const char*>(f.values.data()),
                  static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "SCHTRJ01", 8) != 0)
        throw std::runtime_error("bad trajectory magic in " + path);
    std::int32_t hdr[4];
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    Trajectory tr;
    tr.grid.d = hdr[0];
    tr.grid.n = hdr[1];
    tr.grid.nt = hdr[2];
    const std::int32_t nframes = hdr[3];
    in.read(reinterpret_cast<char*>(&tr.grid.T), sizeof(double));
    tr.grid.validate();
    tr.times.resize(static_cast<std::size_t>(nframes));
    in.read(reinterpret_cast<char*>(tr.times.data()),
            static_cast<std::streamsize>(tr.times.size() * sizeof(double)));
    tr.frames.assign(static_cast<std::size_t>(nframes), Field(tr.grid));
    for (auto& f : tr.frames)
        in.read(reinterpret_cast<char*>(f.values.data()),
                static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated trajectory file: " + path);
    return tr;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace schlab
