#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace spillnet {

struct AssetInfo {
  std::string symbol;
  std::string name;
  std::string sector7;  // fine sector label
  std::string sector4;  // coarse: agriculture / energy / metal / equity
  std::string sector2;  // commodity / equity
};

/// How calendars from multiple price files are aligned.
struct AlignmentPolicy {
  enum class Kind { Intersect, ForwardFill };
  Kind kind = Kind::Intersect;
  int max_fill = 0;  // consecutive gaps a ForwardFill policy may bridge

  /// Parses "intersect" or "ffill:<k>".
  static AlignmentPolicy parse(const std::string& text);
};

/// Aligned date x asset matrix of positive prices. Dates are ISO-8601 and
/// strictly increasing; the matrix has no missing cells.
struct PricePanel {
  std::vector<std::string> dates;
  std::vector<AssetInfo> assets;
  Eigen::MatrixXd prices;  // rows = dates, cols = assets

  int asset_count() const { return static_cast<int>(assets.size()); }
  int date_count() const { return static_cast<int>(dates.size()); }
};

/// Daily log returns: row t holds ln(P_{t+1}/P_t), so there is one row fewer
/// than in the originating price panel.
struct ReturnsPanel {
  std::vector<std::string> dates;
  std::vector<AssetInfo> assets;
  Eigen::MatrixXd returns;

  int asset_count() const { return static_cast<int>(assets.size()); }
  int date_count() const { return static_cast<int>(dates.size()); }
};

/// symbol -> (name, sector labels). Loaded from a CSV with columns
/// symbol,name,sector7[,sector4,sector2]; when the coarse labels are omitted
/// they are derived from the canonical seven-sector taxonomy.
struct SectorMap {
  std::map<std::string, AssetInfo> entries;

  static SectorMap load(const std::string& path);
};

/// Derives the 4-class label from a canonical 7-class label
/// (grains_oilseeds/softs/livestock -> agriculture,
///  precious_metals/industrial_metals -> metal); throws on unknown labels.
std::string coarsen_sector4(const std::string& sector7);
std::string coarsen_sector2(const std::string& sector7);

/// Lowercases and squashes separators so "Grains & Oilseeds" and
/// "grains_oilseeds" compare equal.
std::string normalize_sector_label(const std::string& label);

/// Reads one price series per CSV (date column + one price column) and
/// aligns them on a common calendar. Asset order follows input order; the
/// symbol is the price column header, or the file stem when the header is
/// generic ("price", "close", ...).
PricePanel load_price_panel(const std::vector<std::string>& csv_paths,
                            const AlignmentPolicy& policy);

/// Attaches sector labels from the map; throws if any symbol is missing.
void apply_sector_map(PricePanel& panel, const SectorMap& map);

ReturnsPanel compute_log_returns(const PricePanel& panel);

struct AssetStats {
  std::string symbol;
  double mean = 0.0;
  double sd = 0.0;            // sample standard deviation (1/(T-1))
  double skew = 0.0;          // m3 / m2^{3/2}, population moments (1/T)
  double ex_kurtosis = 0.0;   // m4 / m2^2 - 3
  double jarque_bera = 0.0;
  double adf = 0.0;           // t-statistic of the level coefficient
};

/// JB = T/6 * (skew^2 + ex_kurt^2 / 4); zero exactly when both moments vanish.
double jarque_bera_statistic(double skew, double ex_kurtosis, long n);

/// Augmented Dickey-Fuller t-statistic with intercept and `lags` lagged
/// differences. Only the statistic is produced; the constant-only critical
/// values are -3.43 / -2.86 / -2.57 at 1% / 5% / 10%.
double adf_statistic(const Eigen::VectorXd& y, int lags);

/// Per-asset descriptive statistics. Requires T >= 30 and T >= adf_lags + 10.
std::vector<AssetStats> descriptive_stats(const ReturnsPanel& rp, int adf_lags = 1);

/// CSV with columns category,market,symbol,mean,sd,skew,ex_kurtosis,jarque_bera,adf.
std::string stats_to_csv(const ReturnsPanel& rp, const std::vector<AssetStats>& stats);

}  // namespace spillnet
