#include "spillnet/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "spillnet/csv.hpp"

namespace spillnet {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool valid_iso_date(const std::string& d) {
  if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
  }
  const int month = (d[5] - '0') * 10 + (d[6] - '0');
  const int day = (d[8] - '0') * 10 + (d[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

bool generic_price_header(const std::string& h) {
  const std::string l = lower(h);
  return l == "price" || l == "close" || l == "value" || l == "last" || l == "adj_close" ||
         l == "adj close";
}

struct Series {
  std::string symbol;
  std::map<std::string, double> by_date;
};

Series load_series(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 2) {
    throw std::invalid_argument("expected a date column and one price column: " + path);
  }
  int date_col = 0;
  if (lower(table.header[1]) == "date") date_col = 1;
  const int price_col = 1 - date_col;

  Series series;
  if (generic_price_header(table.header[price_col])) {
    series.symbol = std::filesystem::path(path).stem().string();
  } else {
    series.symbol = table.header[price_col];
  }

  for (const auto& row : table.rows) {
    if (row.size() != 2) throw std::invalid_argument("ragged row in " + path);
    const std::string& date = row[date_col];
    if (!valid_iso_date(date)) {
      throw std::invalid_argument("unparseable date '" + date + "' in " + path);
    }
    const double price = parse_number(row[price_col], path);
    if (!std::isfinite(price) || price <= 0.0) {
      throw std::invalid_argument("non-positive price for " + series.symbol + " on " + date);
    }
    if (!series.by_date.emplace(date, price).second) {
      throw std::invalid_argument("duplicate date " + date + " in " + path);
    }
  }
  if (series.by_date.empty()) throw std::invalid_argument("no data rows in " + path);
  return series;
}

}  // namespace

AlignmentPolicy AlignmentPolicy::parse(const std::string& text) {
  AlignmentPolicy policy;
  if (text == "intersect") {
    policy.kind = Kind::Intersect;
    return policy;
  }
  if (text.rfind("ffill:", 0) == 0) {
    policy.kind = Kind::ForwardFill;
    policy.max_fill = static_cast<int>(parse_number(text.substr(6), "alignment policy"));
    if (policy.max_fill < 1) throw std::invalid_argument("ffill limit must be >= 1");
    return policy;
  }
  throw std::invalid_argument("unknown alignment policy: " + text);
}

std::string normalize_sector_label(const std::string& label) {
  std::string out;
  bool pending_sep = false;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_sep = true;
    }
  }
  return out;
}

std::string coarsen_sector4(const std::string& sector7) {
  const std::string s = normalize_sector_label(sector7);
  if (s == "energy") return "energy";
  if (s == "grains_oilseeds" || s == "softs" || s == "livestock") return "agriculture";
  if (s == "precious_metals" || s == "industrial_metals") return "metal";
  if (s == "equity") return "equity";
  throw std::invalid_argument("unknown sector label: " + sector7);
}

std::string coarsen_sector2(const std::string& sector7) {
  return normalize_sector_label(sector7) == "equity" ? "equity" : "commodity";
}

SectorMap SectorMap::load(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 3 && table.header.size() != 5) {
    throw std::invalid_argument("sector map needs columns symbol,name,sector7[,sector4,sector2]: " +
                                path);
  }
  SectorMap map;
  // Track coarsening consistency when explicit labels are given.
  std::map<std::string, std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("ragged row in " + path);
    AssetInfo info;
    info.symbol = row[0];
    info.name = row[1];
    info.sector7 = normalize_sector_label(row[2]);
    if (row.size() == 5) {
      info.sector4 = normalize_sector_label(row[3]);
      info.sector2 = normalize_sector_label(row[4]);
      auto [it, inserted] = seen.emplace(info.sector7, std::make_pair(info.sector4, info.sector2));
      if (!inserted && it->second != std::make_pair(info.sector4, info.sector2)) {
        throw std::invalid_argument("inconsistent coarse labels for sector " + info.sector7);
      }
    } else {
      info.sector4 = coarsen_sector4(info.sector7);
      info.sector2 = coarsen_sector2(info.sector7);
    }
    if (!map.entries.emplace(info.symbol, info).second) {
      throw std::invalid_argument("duplicate symbol in sector map: " + info.symbol);
    }
  }
  return map;
}

PricePanel load_price_panel(const std::vector<std::string>& csv_paths,
                            const AlignmentPolicy& policy) {
  if (csv_paths.size() < 2) throw std::invalid_argument("need at least 2 price files");
  std::vector<Series> series;
  series.reserve(csv_paths.size());
  for (const auto& path : csv_paths) series.push_back(load_series(path));

  std::vector<std::string> dates;
  if (policy.kind == AlignmentPolicy::Kind::Intersect) {
    std::set<std::string> common;
    for (const auto& [d, v] : series[0].by_date) common.insert(d);
    for (std::size_t i = 1; i < series.size(); ++i) {
      std::set<std::string> next;
      for (const auto& [d, v] : series[i].by_date) {
        if (common.count(d)) next.insert(d);
      }
      common.swap(next);
    }
    dates.assign(common.begin(), common.end());
    if (dates.empty()) throw std::runtime_error("empty intersection of calendars");
  } else {
    std::set<std::string> all;
    for (const auto& s : series) {
      for (const auto& [d, v] : s.by_date) all.insert(d);
    }
    dates.assign(all.begin(), all.end());
  }

  const int n = static_cast<int>(series.size());
  Eigen::MatrixXd prices(static_cast<int>(dates.size()), n);
  std::vector<char> row_complete(dates.size(), 1);
  for (int j = 0; j < n; ++j) {
    double last = 0.0;
    bool have_last = false;
    int gap = 0;
    for (std::size_t t = 0; t < dates.size(); ++t) {
      auto it = series[j].by_date.find(dates[t]);
      if (it != series[j].by_date.end()) {
        prices(static_cast<int>(t), j) = it->second;
        last = it->second;
        have_last = true;
        gap = 0;
      } else if (policy.kind == AlignmentPolicy::Kind::ForwardFill && have_last &&
                 gap < policy.max_fill) {
        prices(static_cast<int>(t), j) = last;
        ++gap;
      } else {
        row_complete[t] = 0;  // leading gap or gap beyond the fill limit
      }
    }
  }

  PricePanel panel;
  for (std::size_t t = 0; t < dates.size(); ++t) {
    if (row_complete[t]) panel.dates.push_back(dates[t]);
  }
  if (panel.dates.empty()) throw std::runtime_error("empty intersection of calendars");
  panel.prices.resize(static_cast<int>(panel.dates.size()), n);
  int out_row = 0;
  for (std::size_t t = 0; t < dates.size(); ++t) {
    if (!row_complete[t]) continue;
    panel.prices.row(out_row++) = prices.row(static_cast<int>(t));
  }
  panel.assets.reserve(series.size());
  for (const auto& s : series) {
    AssetInfo info;
    info.symbol = s.symbol;
    panel.assets.push_back(std::move(info));
  }
  return panel;
}

void apply_sector_map(PricePanel& panel, const SectorMap& map) {
  for (auto& asset : panel.assets) {
    auto it = map.entries.find(asset.symbol);
    if (it == map.entries.end()) {
      throw std::invalid_argument("symbol missing from sector map: " + asset.symbol);
    }
    asset = it->second;
  }
}

ReturnsPanel compute_log_returns(const PricePanel& panel) {
  if (panel.date_count() < 2) throw std::invalid_argument("need at least 2 dates");
  ReturnsPanel rp;
  rp.assets = panel.assets;
  rp.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  const int t = panel.date_count();
  rp.returns = panel.prices.bottomRows(t - 1).array().log().matrix() -
               panel.prices.topRows(t - 1).array().log().matrix();
  return rp;
}

double jarque_bera_statistic(double skew, double ex_kurtosis, long n) {
  return static_cast<double>(n) / 6.0 * (skew * skew + ex_kurtosis * ex_kurtosis / 4.0);
}

double adf_statistic(const Eigen::VectorXd& y, int lags) {
  const int t = static_cast<int>(y.size());
  if (lags < 0) throw std::invalid_argument("adf lags must be >= 0");
  if (t < lags + 10) throw std::invalid_argument("insufficient observations");

  // dy_t = c + gamma * y_{t-1} + sum_j delta_j dy_{t-j} + e_t
  Eigen::VectorXd dy = y.tail(t - 1) - y.head(t - 1);
  const int rows = t - 1 - lags;
  const int cols = 2 + lags;
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd b(rows);
  for (int r = 0; r < rows; ++r) {
    const int ti = lags + r;  // index into dy
    b(r) = dy(ti);
    x(r, 0) = 1.0;
    x(r, 1) = y(ti);  // level lagged once relative to dy(ti)
    for (int j = 1; j <= lags; ++j) x(r, 1 + j) = dy(ti - j);
  }
  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::VectorXd beta = xtx.ldlt().solve(x.transpose() * b);
  const Eigen::VectorXd resid = b - x * beta;
  const int df = rows - cols;
  if (df <= 0) throw std::invalid_argument("insufficient observations");
  const double s2 = resid.squaredNorm() / df;
  const double var_gamma = s2 * xtx.inverse()(1, 1);
  if (!(var_gamma > 0.0)) throw std::runtime_error("degenerate variance");
  return beta(1) / std::sqrt(var_gamma);
}

std::vector<AssetStats> descriptive_stats(const ReturnsPanel& rp, int adf_lags) {
  const int t = rp.date_count();
  if (t < 30 || t < adf_lags + 10) throw std::invalid_argument("insufficient observations");
  std::vector<AssetStats> out;
  out.reserve(rp.assets.size());
  for (int j = 0; j < rp.asset_count(); ++j) {
    const Eigen::VectorXd r = rp.returns.col(j);
    AssetStats s;
    s.symbol = rp.assets[j].symbol;
    s.mean = r.mean();
    const Eigen::ArrayXd d = r.array() - s.mean;
    const double m2 = d.square().mean();
    if (m2 <= 0.0) throw std::runtime_error("degenerate variance: " + s.symbol);
    const double m3 = d.cube().mean();
    const double m4 = d.square().square().mean();
    s.sd = std::sqrt(m2 * t / (t - 1.0));
    s.skew = m3 / std::pow(m2, 1.5);
    s.ex_kurtosis = m4 / (m2 * m2) - 3.0;
    s.jarque_bera = jarque_bera_statistic(s.skew, s.ex_kurtosis, t);
    s.adf = adf_statistic(r, adf_lags);
    out.push_back(std::move(s));
  }
  return out;
}

std::string stats_to_csv(const ReturnsPanel& rp, const std::vector<AssetStats>& stats) {
  std::string out = csv_line(
      {"category", "market", "symbol", "mean", "sd", "skew", "ex_kurtosis", "jarque_bera", "adf"});
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const AssetInfo& asset = rp.assets[i];
    const AssetStats& s = stats[i];
    out += csv_line({asset.sector7, asset.name, s.symbol, format_number(s.mean),
                     format_number(s.sd), format_number(s.skew), format_number(s.ex_kurtosis),
                     format_number(s.jarque_bera), format_number(s.adf)});
  }
  return out;
}

}  // namespace spillnet
