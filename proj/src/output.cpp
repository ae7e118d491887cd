#include "lambda_store/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lambda_store/error.hpp"

namespace lambda_store {

std::string format_float(double x)
{
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos) {
        return s; // inf / nan
    }
    const int exponent = std::atoi(s.c_str() + e + 1);
    return s.substr(0, e + 1) + std::to_string(exponent);
}

std::string exit_csv(const SimulationRecord& record)
{
    std::string out = "t_prime,eps1_exit,eps3_exit,eps2,eps4\n";
    for (const auto& s : record.exit_series) {
        out += format_float(s.t) + ',' + format_float(s.eps1) + ',' + format_float(s.eps3) +
               ',' + format_float(s.eps2) + ',' + format_float(s.eps4) + '\n';
    }
    return out;
}

std::string coherence_csv(const SimulationRecord& record)
{
    std::string out = "t_prime,z,re_sigma_bc,im_sigma_bc\n";
    for (const auto& p : record.coherence_map) {
        out += format_float(p.t) + ',' + format_float(p.z) + ',' +
               format_float(p.sigma_bc.real()) + ',' + format_float(p.sigma_bc.imag()) + '\n';
    }
    return out;
}

std::string peaks_txt(const SimulationRecord& record)
{
    std::string out;
    auto emit = [&](int channel, const std::vector<Peak>& peaks) {
        for (const auto& p : peaks) {
            out += std::to_string(channel) + ' ' + format_float(p.t_center) + ' ' +
                   format_float(p.height) + ' ' + format_float(p.width_fwhm) + '\n';
        }
    };
    emit(1, record.peaks_eps1);
    emit(3, record.peaks_eps3);
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) {
        throw IoError("failed writing " + path.string());
    }
}

} // namespace

void emit_outputs(const SimulationRecord& record, const std::filesystem::path& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    write_file(out_dir / "exit.csv", exit_csv(record));
    write_file(out_dir / "coherence.csv", coherence_csv(record));
    write_file(out_dir / "peaks.txt", peaks_txt(record));
}

} // namespace lambda_store
