#pragma once

// Result records and their serialization: CSV (fixed schema, 17 significant
// digits, deterministically ordered), JSON, and a gnuplot script per sweep.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace aniso::lab {

struct ResultRecord {
    std::string experiment;
    double p = std::nan("");
    double s = std::nan("");
    double t = std::nan("");
    double r = std::nan("");
    int N = 0;
    double cone_theta = std::nan("");  // degrees
    std::string u_lambda;              // components joined by ';'
    std::string quantity;
    double value = std::nan("");
    double slope = std::nan("");
    std::string verdict;
    std::uint64_t seed = 0;
};

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* kCsvHeader =
    "experiment,p,s,t,r,N,cone_theta,u_lambda,quantity,value,slope,verdict,seed";

inline bool record_less(const ResultRecord& a, const ResultRecord& b) {
    auto key = [](const ResultRecord& x) {
        return std::tie(x.experiment, x.quantity, x.p, x.s, x.t, x.r, x.N, x.u_lambda,
                        x.verdict);
    };
    return key(a) < key(b);
}

inline std::string to_csv(std::vector<ResultRecord> records) {
    std::stable_sort(records.begin(), records.end(), record_less);
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const ResultRecord& r : records) {
        os << r.experiment << ',' << fmt17(r.p) << ',' << fmt17(r.s) << ',' << fmt17(r.t)
           << ',' << fmt17(r.r) << ',' << r.N << ',' << fmt17(r.cone_theta) << ','
           << r.u_lambda << ',' << r.quantity << ',' << fmt17(r.value) << ','
           << fmt17(r.slope) << ',' << r.verdict << ',' << r.seed << '\n';
    }
    return os.str();
}

inline std::string to_json(std::vector<ResultRecord> records) {
    std::stable_sort(records.begin(), records.end(), record_less);
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRecord& r : records) {
        arr.push_back({{"experiment", r.experiment},
                       {"p", r.p},
                       {"s", r.s},
                       {"t", r.t},
                       {"r", r.r},
                       {"N", r.N},
                       {"cone_theta", r.cone_theta},
                       {"u_lambda", r.u_lambda},
                       {"quantity", r.quantity},
                       {"value", r.value},
                       {"slope", r.slope},
                       {"verdict", r.verdict},
                       {"seed", r.seed}});
    }
    return arr.dump(2) + "\n";
}

// Minimal log-log sweep plot referencing the CSV next to it.
inline std::string gnuplot_script(const std::string& csv_name, const std::string& title) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set logscale xy 2\n"
       << "set xlabel 'N'\nset ylabel 'value'\n"
       << "set title '" << title << "'\n"
       << "set key outside\n"
       << "plot '" << csv_name << "' every ::1 using 6:10 with points pt 7 title 'records'\n";
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace aniso::lab
