#include "ipolar/manifest.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ipolar {

std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

RunManifest RunManifest::make(const std::string& command, const std::string& config_text,
                              std::uint64_t seed) {
    RunManifest mf;
    mf.command = command;
    mf.config_digest = fnv1a_digest(config_text);
    mf.seed = seed;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    mf.timestamp = os.str();
    return mf;
}

std::string RunManifest::header_block() const {
    std::ostringstream os;
    os << "# command: " << command << "\n";
    os << "# config_digest: " << config_digest << "\n";
    os << "# seed: " << seed << "\n";
    os << "# version: " << version << "\n";
    os << "# timestamp: " << timestamp << "\n";
    return os.str();
}

namespace {

std::string coef_str(const Rational& c) {
    const BigInt num = boost::multiprecision::numerator(c);
    const BigInt den = boost::multiprecision::denominator(c);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string coef_str(double c) {
    std::ostringstream os;
    os << std::setprecision(17) << c;
    return os.str();
}

void write_meta(std::ostringstream& os, const RunManifest& mf,
                const std::map<std::string, std::string>& meta) {
    os << mf.header_block();
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
}

template <class Coef>
std::string wef_csv_impl(const WeightPoly<Coef>& p, const RunManifest& mf,
                         const std::map<std::string, std::string>& meta) {
    std::ostringstream os;
    write_meta(os, mf, meta);
    os << "d,coefficient\n";
    for (const auto& [d, c] : p.coeffs()) os << d << "," << coef_str(c) << "\n";
    return os.str();
}

template <class Coef>
std::string iowef_csv_impl(const IoWeightPoly<Coef>& p, const RunManifest& mf,
                           const std::map<std::string, std::string>& meta) {
    std::ostringstream os;
    write_meta(os, mf, meta);
    os << "w,d,coefficient\n";
    for (const auto& [wd, c] : p.coeffs()) os << wd.first << "," << wd.second << "," << coef_str(c) << "\n";
    return os.str();
}

}  // namespace

std::string wef_to_csv(const WeightPoly<Rational>& p, const RunManifest& mf,
                       const std::map<std::string, std::string>& meta) {
    return wef_csv_impl(p, mf, meta);
}
std::string wef_to_csv(const WeightPoly<double>& p, const RunManifest& mf,
                       const std::map<std::string, std::string>& meta) {
    return wef_csv_impl(p, mf, meta);
}
std::string iowef_to_csv(const IoWeightPoly<Rational>& p, const RunManifest& mf,
                         const std::map<std::string, std::string>& meta) {
    return iowef_csv_impl(p, mf, meta);
}
std::string iowef_to_csv(const IoWeightPoly<double>& p, const RunManifest& mf,
                         const std::map<std::string, std::string>& meta) {
    return iowef_csv_impl(p, mf, meta);
}

WeightPoly<double> wef_from_csv(const std::string& text) {
    WeightPoly<double> out;
    std::istringstream is(text);
    std::string line;
    int max_d = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("d,", 0) == 0) continue;  // column header
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed WEF CSV row: " + line);
        const int d = std::stoi(line.substr(0, comma));
        std::string coef = line.substr(comma + 1);
        double value;
        const auto slash = coef.find('/');
        if (slash != std::string::npos) {
            const Rational r(BigInt(coef.substr(0, slash)), BigInt(coef.substr(slash + 1)));
            value = r.convert_to<double>();
        } else {
            value = std::stod(coef);
        }
        out.add(d, value);
        max_d = std::max(max_d, d);
    }
    out.set_length(max_d);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace ipolar
