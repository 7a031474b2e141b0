#include "lezter/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "lezter/csv.hpp"
#include "lezter/preprocess.hpp"
#include "lezter/random.hpp"

namespace lezter {

// ---------------------------------------------------------------------------
// Configuration

Binarization Binarization::parse(std::string_view text) {
  if (text == "median") return {Kind::Median, 2};
  constexpr std::string_view prefix = "quantile:";
  if (text.starts_with(prefix)) {
    const double alphabet = csv::parse_real(text.substr(prefix.size()));
    if (alphabet < 2 || alphabet != std::floor(alphabet)) {
      throw std::invalid_argument("quantile alphabet must be an integer >= 2");
    }
    return {Kind::Quantile, static_cast<std::size_t>(alphabet)};
  }
  throw std::invalid_argument("binarization must be 'median' or 'quantile:<alphabet>'");
}

std::string Binarization::to_string() const {
  return kind == Kind::Median ? "median" : "quantile:" + std::to_string(alphabet);
}

void SweepConfig::validate() const {
  if (epsilon_values.empty() || lengths.empty() || m_values.empty() || tau_values.empty()) {
    throw std::invalid_argument("sweep lists must be non-empty");
  }
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (surrogates < 1) throw std::invalid_argument("surrogates must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  for (double e : epsilon_values) {
    if (!(e >= 0.0)) throw std::invalid_argument("epsilon values must be >= 0");
  }
  for (auto v : m_values) {
    if (v < 1) throw std::invalid_argument("m values must be >= 1");
  }
  for (auto v : tau_values) {
    if (v < 1) throw std::invalid_argument("tau values must be >= 1");
  }
  for (auto v : lengths) {
    if (v < 2) throw std::invalid_argument("lengths must be >= 2");
  }
}

std::string SweepConfig::resolved_summary_path() const {
  if (!summary_path.empty() || output_path.empty()) return summary_path;
  const std::filesystem::path p(output_path);
  auto name = p.stem().string() + "_summary" + p.extension().string();
  return (p.parent_path() / name).string();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_uint(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a non-negative integer: '" + t + "'");
  }
  return std::stoull(t);
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  for (const auto& field : csv::split_line(text)) {
    const std::string item = trim(field);
    if (item.empty()) throw std::invalid_argument("empty list item");
    out.push_back(static_cast<T>(parse(item)));
  }
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  bool have_system = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    try {
      if (key == "system") {
        cfg.system = parse_system_kind(value);
        have_system = true;
      } else if (key == "epsilon_values") {
        cfg.epsilon_values = parse_list<double>(value, [](const std::string& s) { return csv::parse_real(s); });
      } else if (key == "lengths") {
        cfg.lengths = parse_list<std::size_t>(value, parse_uint);
      } else if (key == "m_values") {
        cfg.m_values = parse_list<std::size_t>(value, parse_uint);
      } else if (key == "tau_values") {
        cfg.tau_values = parse_list<std::size_t>(value, parse_uint);
      } else if (key == "realizations") {
        cfg.realizations = parse_uint(value);
      } else if (key == "surrogates") {
        cfg.surrogates = parse_uint(value);
      } else if (key == "master_seed") {
        cfg.master_seed = parse_uint(value);
      } else if (key == "binarization") {
        cfg.binarization = Binarization::parse(value);
      } else if (key == "discard") {
        cfg.discard = parse_uint(value);
      } else if (key == "output_path") {
        cfg.output_path = value;
      } else if (key == "summary_path") {
        cfg.summary_path = value;
      } else if (key == "surrogate") {
        cfg.surrogate = parse_surrogate_method(value);
      } else if (key == "threads") {
        cfg.threads = parse_uint(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_system) throw std::invalid_argument("config: missing 'system'");
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return parse_sweep_config(in);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr const char* kRecordHeader =
    "system,epsilon,length,m,tau,realization,seed,t_yx,t_xy,t_yx_surr,t_xy_surr,t_global,elapsed_ms,status,message";

std::string sanitize(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

}  // namespace

void write_records_header(std::ostream& out) { out << kRecordHeader << '\n'; }

void write_record(std::ostream& out, const SweepRecord& r) {
  out << r.system << ',' << csv::format_real(r.epsilon) << ',' << r.length << ',' << r.m << ',' << r.tau << ','
      << r.realization << ',' << r.seed << ',' << csv::format_real(r.t_yx) << ',' << csv::format_real(r.t_xy) << ','
      << csv::format_real(r.t_yx_surr) << ',' << csv::format_real(r.t_xy_surr) << ','
      << csv::format_real(r.t_global) << ',' << csv::format_real(r.elapsed_ms) << ',' << r.status << ','
      << sanitize(r.message) << '\n';
}

void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  write_records_header(out);
  for (const auto& r : records) write_record(out, r);
}

std::vector<SweepRecord> read_records_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  if (table.header != csv::split_line(kRecordHeader)) throw std::runtime_error("csv: unexpected record header");
  std::vector<SweepRecord> out;
  out.reserve(table.rows.size());
  for (const auto& f : table.rows) {
    SweepRecord r;
    r.system = f[0];
    r.epsilon = csv::parse_real(f[1]);
    r.length = parse_uint(f[2]);
    r.m = parse_uint(f[3]);
    r.tau = parse_uint(f[4]);
    r.realization = parse_uint(f[5]);
    r.seed = parse_uint(f[6]);
    r.t_yx = csv::parse_real(f[7]);
    r.t_xy = csv::parse_real(f[8]);
    r.t_yx_surr = csv::parse_real(f[9]);
    r.t_xy_surr = csv::parse_real(f[10]);
    r.t_global = csv::parse_real(f[11]);
    r.elapsed_ms = csv::parse_real(f[12]);
    r.status = f[13];
    r.message = f[14];
    out.push_back(std::move(r));
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "epsilon,length,m,tau,count,failed,q1,median,q3,whisker_low,whisker_high,outliers\n";
  for (const auto& s : rows) {
    out << csv::format_real(s.epsilon) << ',' << s.length << ',' << s.m << ',' << s.tau << ',' << s.count << ','
        << s.failed << ',' << csv::format_real(s.q1) << ',' << csv::format_real(s.median) << ','
        << csv::format_real(s.q3) << ',' << csv::format_real(s.whisker_low) << ','
        << csv::format_real(s.whisker_high) << ',' << s.outliers << '\n';
  }
}

// ---------------------------------------------------------------------------
// Sweep

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t epsilon_index, std::size_t length_index,
                               std::size_t realization) {
  return derive_seed(master_seed, {epsilon_index, length_index, realization});
}

namespace {

struct WorkItem {
  std::size_t epsilon_index;
  std::size_t length_index;
  std::size_t realization;
};

SymbolSequence symbolize(std::span<const double> values, const Binarization& b) {
  if (b.kind == Binarization::Kind::Median) return binarize_median(values).symbols;
  return quantize_quantiles(values, b.alphabet).symbols;
}

std::vector<SweepRecord> run_item(const SweepConfig& cfg, const WorkItem& item) {
  const double epsilon = cfg.epsilon_values[item.epsilon_index];
  const std::size_t length = cfg.lengths[item.length_index];
  const std::uint64_t seed = realization_seed(cfg.master_seed, item.epsilon_index, item.length_index,
                                              item.realization);

  std::vector<SweepRecord> records;
  records.reserve(cfg.m_values.size() * cfg.tau_values.size());
  auto base_record = [&](std::size_t m, std::size_t tau) {
    SweepRecord r;
    r.system = std::string(to_string(cfg.system));
    r.epsilon = epsilon;
    r.length = length;
    r.m = m;
    r.tau = tau;
    r.realization = item.realization;
    r.seed = seed;
    return r;
  };
  auto fail = [](SweepRecord& r, std::string message) {
    const double nan = std::nan("");
    r.t_yx = r.t_xy = r.t_yx_surr = r.t_xy_surr = r.t_global = r.elapsed_ms = nan;
    r.status = "failed";
    r.message = std::move(message);
  };

  std::optional<SymbolSequence> x, y;
  std::string trajectory_error;
  try {
    SystemSpec spec;
    spec.kind = cfg.system;
    spec.epsilon = epsilon;
    spec.length = length;
    spec.discard = cfg.discard;
    spec.seed = seed;
    const Trajectory traj = simulate(spec);
    x = symbolize(traj.target, cfg.binarization);
    y = symbolize(traj.source, cfg.binarization);
  } catch (const std::exception& e) {
    trajectory_error = e.what();
  }

  for (std::size_t m : cfg.m_values) {
    for (std::size_t tau : cfg.tau_values) {
      SweepRecord r = base_record(m, tau);
      if (!x) {
        fail(r, trajectory_error);
        records.push_back(std::move(r));
        continue;
      }
      try {
        TerOptions opts{m, tau, cfg.surrogates, seed, cfg.surrogate};
        const auto start = std::chrono::steady_clock::now();
        const TerEstimate est = global_ter(*x, *y, opts);
        const auto stop = std::chrono::steady_clock::now();
        r.t_yx = est.t_yx;
        r.t_xy = est.t_xy;
        r.t_yx_surr = est.t_yx_surr;
        r.t_xy_surr = est.t_xy_surr;
        r.t_global = est.t_global;
        r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      } catch (const std::exception& e) {
        fail(r, e.what());
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

// Streams finished work items to disk in canonical order.
class OrderedWriter {
 public:
  OrderedWriter(std::ostream* out, std::size_t items) : out_(out), pending_(items), done_(items, false) {}

  void complete(std::size_t index, std::vector<SweepRecord> records) {
    std::lock_guard lock(mutex_);
    pending_[index] = std::move(records);
    done_[index] = true;
    while (next_ < done_.size() && done_[next_]) {
      if (out_) {
        for (const auto& r : pending_[next_]) write_record(*out_, r);
        out_->flush();
        if (!*out_) throw std::runtime_error("I/O failure while writing sweep records");
      }
      ++next_;
    }
  }

  std::vector<SweepRecord> collect() {
    std::vector<SweepRecord> all;
    for (auto& item : pending_) {
      std::move(item.begin(), item.end(), std::back_inserter(all));
    }
    return all;
  }

 private:
  std::ostream* out_;
  std::mutex mutex_;
  std::vector<std::vector<SweepRecord>> pending_;
  std::vector<bool> done_;
  std::size_t next_ = 0;
};

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();

  std::vector<WorkItem> items;
  for (std::size_t e = 0; e < cfg.epsilon_values.size(); ++e) {
    for (std::size_t l = 0; l < cfg.lengths.size(); ++l) {
      for (std::size_t r = 0; r < cfg.realizations; ++r) items.push_back({e, l, r});
    }
  }

  std::ofstream file;
  const std::string partial = cfg.output_path + ".partial";
  if (!cfg.output_path.empty()) {
    file.open(partial, std::ios::out | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + partial + " for writing");
    write_records_header(file);
  }

  OrderedWriter writer(cfg.output_path.empty() ? nullptr : &file, items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        writer.complete(i, run_item(cfg, items[i]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        abort = true;
        return;
      }
    }
  };

  const std::size_t n_threads = std::min(cfg.threads, std::max<std::size_t>(items.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto records = writer.collect();
  if (!cfg.output_path.empty()) {
    file.close();
    if (!file) throw std::runtime_error("I/O failure while closing " + partial);
    std::filesystem::rename(partial, cfg.output_path);

    const std::string summary_path = cfg.resolved_summary_path();
    std::ofstream summary(summary_path);
    write_summary_csv(summary, summarize(records));
    if (!summary) throw std::runtime_error("I/O failure while writing " + summary_path);
  }
  return records;
}

// ---------------------------------------------------------------------------
// Summaries

std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");

  using Key = std::tuple<double, std::size_t, std::size_t, std::size_t>;
  std::map<Key, std::pair<std::vector<double>, std::size_t>> groups;
  for (const auto& r : records) {
    auto& [values, failed] = groups[Key{r.epsilon, r.length, r.m, r.tau}];
    if (r.ok()) {
      values.push_back(r.t_global);
    } else {
      ++failed;
    }
  }

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  const double nan = std::nan("");
  for (auto& [key, group] : groups) {
    auto& [values, failed] = group;
    SummaryRow s;
    std::tie(s.epsilon, s.length, s.m, s.tau) = key;
    s.count = values.size();
    s.failed = failed;
    if (values.empty()) {
      s.q1 = s.median = s.q3 = s.whisker_low = s.whisker_high = nan;
      rows.push_back(s);
      continue;
    }
    std::sort(values.begin(), values.end());
    s.q1 = sorted_quantile(values, 0.25);
    s.median = sorted_quantile(values, 0.5);
    s.q3 = sorted_quantile(values, 0.75);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_low = *std::find_if(values.begin(), values.end(), [&](double v) { return v >= lo_fence; });
    s.whisker_high = *std::find_if(values.rbegin(), values.rend(), [&](double v) { return v <= hi_fence; });
    s.outliers = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v < lo_fence || v > hi_fence; }));
    rows.push_back(s);
  }
  return rows;
}

}  // namespace lezter
