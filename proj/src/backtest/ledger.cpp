#include "alphafuse/backtest/ledger.hpp"

#include <fstream>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

double TradeLedger::total_turnover() const {
    double s = 0.0;
    for (double t : turnover) s += t;
    return s;
}

void write_pnl_csv(const std::string& path, const TradeLedger& ledger) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,pnl,cum_pnl,turnover\n";
    for (std::size_t d = 0; d < ledger.dates.size(); ++d) {
        out << ledger.dates[d].to_string() << ',' << csv::format_double(ledger.pnl[d]) << ','
            << csv::format_double(ledger.cum_pnl[d]) << ',' << csv::format_double(ledger.turnover[d]) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::backtest
