// Command-line front end for the WCG content characterization library.
//
// Subcommands: map, characterize, criteria, select, benchmark, stats,
// gen-corpus. Every report embeds the tool version, a config echo, and the
// seed, so a run can be reproduced byte-for-byte from its own output.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wcg/wcg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

double j9(double v) { return wcg::round_g9(v); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<wcg::Gamut> resolve_gamuts(const std::string& csv) {
  std::vector<wcg::Gamut> out;
  for (const auto& name : split_list(csv)) out.push_back(wcg::resolve_gamut(name));
  if (out.empty()) throw std::runtime_error("empty gamut list");
  return out;
}

// Sorted (deterministic) list of decodable images in a directory.
std::vector<fs::path> list_images(const std::string& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (ext == ".png" || ext == ".tif" || ext == ".tiff") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::runtime_error("no images found in " + dir);
  return out;
}

wcg::TransferFunction transfer_or_default(const std::string& flag, const fs::path& path) {
  if (!flag.empty()) return wcg::TransferFunction::parse(flag);
  return wcg::default_transfer_for(path.string());
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

json meta_block(const std::string& format, const json& config) {
  return json{{"format", format},
              {"format_version", wcg::kFormatVersion},
              {"tool_version", wcg::kVersion},
              {"config", config}};
}

// --- tiny CSV support -------------------------------------------------------

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> meta;  // from "# key: value" lines

  size_t column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error("CSV column '" + name + "' not found");
  }

  std::vector<double> numeric_column(const std::string& name) const {
    const size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(std::stod(r.at(c)));
    return out;
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Csv csv;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon != std::string::npos)
        csv.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!have_header) {
      csv.header = fields;
      have_header = true;
    } else {
      csv.rows.push_back(fields);
    }
  }
  if (!have_header) throw std::runtime_error(path + ": empty CSV");
  return csv;
}

// Feature columns (d_1..d_N) of a characterize CSV, plus target names.
struct LoadedFeatures {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> target_names;
  std::vector<std::string> paths;
};

LoadedFeatures load_features(const Csv& csv) {
  LoadedFeatures lf;
  std::vector<size_t> cols;
  for (size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i].rfind("d_", 0) == 0) cols.push_back(i);
  if (cols.empty()) throw std::runtime_error("CSV has no d_* feature columns");
  const auto meta_targets = csv.meta.find("targets");
  if (meta_targets != csv.meta.end())
    lf.target_names = split_list(meta_targets->second);
  else
    for (size_t i = 0; i < cols.size(); ++i) lf.target_names.push_back("d_" + std::to_string(i + 1));
  const bool has_path = !csv.header.empty() && csv.header[0] == "path";
  for (const auto& r : csv.rows) {
    std::vector<double> row;
    for (size_t c : cols) row.push_back(std::stod(r.at(c)));
    lf.rows.push_back(std::move(row));
    if (has_path) lf.paths.push_back(r.at(0));
  }
  if (lf.rows.empty()) throw std::runtime_error("CSV has no data rows");
  return lf;
}

json test_to_json(const wcg::TestResult& t, double threshold) {
  json j{{"test", t.test},
         {"statistic", j9(t.statistic)},
         {"df", j9(t.df1)},
         {"p_value", j9(t.p_value)},
         {"side", wcg::test_side_name(t.side)},
         {"significant", t.p_value < threshold}};
  if (t.test == "f") j["df2"] = j9(t.df2);
  return j;
}

// --- subcommand implementations ---------------------------------------------

struct MapArgs {
  std::string op = "clip", src, dst, in, out, transfer;
  int bit_depth = 16;
};

void run_map(const MapArgs& a) {
  const wcg::Gamut src = wcg::resolve_gamut(a.src);
  const wcg::Gamut dst = wcg::resolve_gamut(a.dst);
  const wcg::TransferFunction tf = transfer_or_default(a.transfer, a.in);
  const wcg::LinearImage img = wcg::load_image(a.in, tf, src);
  const wcg::GamutMapper mapper(wcg::parse_mapper_kind(a.op), src, dst);
  const wcg::LinearImage mapped = wcg::apply(mapper, img);
  wcg::save_image(mapped, a.out, transfer_or_default(a.transfer, a.out), a.bit_depth);
}

struct CharacterizeArgs {
  std::string images, out = "characterize.csv";
  std::string ref = "P3", targets = "Rec709,Toy", mapper = "clip", transfer;
  double alpha = 2.0, beta = -3.5, gamma = 1.9;
};

void run_characterize(const CharacterizeArgs& a) {
  const wcg::Gamut ref = wcg::resolve_gamut(a.ref);
  const std::vector<wcg::Gamut> targets = resolve_gamuts(a.targets);
  const wcg::MapperKind kind = wcg::parse_mapper_kind(a.mapper);
  const wcg::SigmoidParams params{a.alpha, a.beta, a.gamma};
  const auto paths = list_images(a.images);

  std::vector<wcg::FeatureVector> results(paths.size());
  wcg::parallel_for(paths.size(), [&](size_t i) {
    const wcg::LinearImage img =
        wcg::load_image(paths[i].string(), transfer_or_default(a.transfer, paths[i]), ref);
    results[i] = wcg::characterize(img, ref, targets, kind, params);
  });

  const json config{{"ref", ref.name},
                    {"targets", split_list(a.targets)},
                    {"mapper", a.mapper},
                    {"sigmoid", {{"alpha", a.alpha}, {"beta", a.beta}, {"gamma", a.gamma}}},
                    {"transfer", a.transfer.empty() ? "auto" : a.transfer}};

  std::ostringstream out;
  out << "# format: wcg-characterize v" << wcg::kFormatVersion << "\n";
  out << "# tool_version: " << wcg::kVersion << "\n";
  out << "# config: " << config.dump() << "\n";
  out << "# targets: ";
  for (size_t t = 0; t < targets.size(); ++t)
    out << (t ? "," : "") << targets[t].name;
  out << "\npath";
  for (size_t t = 0; t < targets.size(); ++t) out << ",d_" << t + 1;
  for (size_t t = 0; t < targets.size(); ++t) out << ",cssim_" << t + 1;
  out << "\n";
  for (size_t i = 0; i < paths.size(); ++i) {
    out << paths[i].filename().string();
    for (double d : results[i].values) out << "," << wcg::format_g9(d);
    for (double c : results[i].cssim_values) out << "," << wcg::format_g9(c);
    out << "\n";
  }
  write_text(a.out, out.str());
  std::cout << "wrote " << a.out << " (" << paths.size() << " images)\n";
}

struct CriteriaArgs {
  std::string features, out = "criteria.json";
  int bins = 10;
  double scale = 2.0;
};

void run_criteria(const CriteriaArgs& a) {
  const Csv csv = read_csv(a.features);
  const LoadedFeatures lf = load_features(csv);
  wcg::FeatureMatrix m;
  m.rows = lf.rows;
  m.column_names = lf.target_names;
  m.scale = a.scale;
  const wcg::CriteriaReport rep = wcg::report(m, static_cast<size_t>(a.bins));

  json j = meta_block("wcg-criteria",
                      json{{"features", a.features}, {"bins", a.bins}, {"scale", a.scale}});
  json per_target = json::array();
  for (size_t c = 0; c < rep.column_names.size(); ++c)
    per_target.push_back(json{{"target", rep.column_names[c]},
                              {"coverage", j9(rep.coverage_per_column[c])},
                              {"uniformity", j9(rep.uniformity_per_column[c])}});
  j["per_target"] = per_target;
  j["total"] = json{{"coverage", j9(rep.total_cov)}, {"uniformity", j9(rep.total_unif)}};
  j["rows"] = m.rows.size();
  write_text(a.out, j.dump(2) + "\n");
  std::cout << "wrote " << a.out << "\n";
}

struct SelectArgs {
  std::string features, images, out = "select.json";
  std::string feature = "framework", transfer;
  size_t k = 5, per_cluster = 1, trials = 100;
  uint64_t seed = 0;
  bool robustness = false;
  bool linear_colorfulness = false;
};

void run_select(const SelectArgs& a) {
  const wcg::SelectionFeature kind = wcg::parse_selection_feature(a.feature);
  std::vector<std::vector<double>> feats;
  std::vector<std::string> ids;

  if (kind == wcg::SelectionFeature::Colorfulness) {
    if (a.images.empty())
      throw std::runtime_error("select --feature colorfulness needs --images");
    for (const auto& p : list_images(a.images)) {
      const auto tf = transfer_or_default(a.transfer, p);
      const wcg::LinearImage img =
          wcg::load_image(p.string(), tf, wcg::builtin_gamut(wcg::BuiltinGamut::P3));
      feats.push_back({wcg::colorfulness(img, tf, a.linear_colorfulness)});
      ids.push_back(p.filename().string());
    }
  } else {
    if (a.features.empty())
      throw std::runtime_error("select needs --features (characterize CSV)");
    const LoadedFeatures lf = load_features(read_csv(a.features));
    feats = lf.rows;
    ids = lf.paths;
  }

  wcg::SelectionConfig cfg;
  cfg.k = a.k;
  cfg.per_cluster = a.per_cluster;
  cfg.seed = a.seed;
  cfg.feature = kind;
  const wcg::SelectionResult res = wcg::select_representative(feats, cfg);

  json j = meta_block("wcg-select", json{{"feature", a.feature},
                                         {"k", a.k},
                                         {"per_cluster", a.per_cluster},
                                         {"trials", a.trials},
                                         {"robustness", a.robustness},
                                         {"linear_colorfulness", a.linear_colorfulness}});
  j["seed"] = a.seed;
  json clusters = json::array();
  for (size_t c = 0; c < res.selected_per_cluster.size(); ++c) {
    json cj{{"selected", res.selected_per_cluster[c]}};
    if (c < res.centroids.size()) {
      json cen = json::array();
      for (double v : res.centroids[c]) cen.push_back(j9(v));
      cj["centroid"] = cen;
    }
    clusters.push_back(cj);
  }
  j["clusters"] = clusters;
  j["selected"] = res.flattened();
  if (!ids.empty()) {
    json names = json::array();
    for (size_t i : res.flattened())
      names.push_back(i < ids.size() ? ids[i] : std::to_string(i));
    j["selected_ids"] = names;
  }
  j["shortfall"] = res.shortfall;

  if (a.robustness) {
    // mos-like ground truth defaults to the first feature column
    std::vector<double> mos_like;
    for (const auto& f : feats) mos_like.push_back(f[0]);
    const wcg::RobustnessResult rr =
        wcg::robustness_protocol(feats, mos_like, cfg, a.trials);
    json pccs = json::array();
    for (double p : rr.pccs) pccs.push_back(j9(p));
    j["pcc_trials"] = pccs;
    j["pcc_mean"] = j9(wcg::mean(rr.pccs));
    j["excluded_trials"] = rr.excluded;
  }
  write_text(a.out, j.dump(2) + "\n");
  std::cout << "wrote " << a.out << "\n";
}

struct BenchmarkArgs {
  std::string images, out_csv = "gains.csv", out = "benchmark.json";
  std::string ref = "Rec2020", targets = "P3,Rec709,Toy";
  // The framework features come from a nested reduction chain. P3 cannot be
  // part of it (its red primary sits just outside Rec2020), hence the
  // separate default here.
  std::string feature_targets = "Rec709,Toy";
  std::string mapper_a = "compress", mapper_b = "clip";
  std::string dir_a, dir_b;
  std::string select = "colorfulness", transfer;
  std::string filter_gamut = "Rec709";
  size_t k = 3, per_cluster = 3, trials = 100;
  uint64_t seed = 0;
  double min_oog = 0.005;
  double alpha = 0.05;
};

void run_benchmark(const BenchmarkArgs& a) {
  const wcg::Gamut ref = wcg::resolve_gamut(a.ref);
  const std::vector<wcg::Gamut> targets = resolve_gamuts(a.targets);
  const wcg::Gamut filter_gamut = wcg::resolve_gamut(a.filter_gamut);

  const auto paths = list_images(a.images);
  std::vector<wcg::LinearImage> loaded;
  std::vector<std::string> ids;
  for (const auto& p : paths) {
    loaded.push_back(wcg::load_image(p.string(), transfer_or_default(a.transfer, p), ref));
    ids.push_back(p.filename().string());
  }

  // drop images with no or too few WCG pixels
  std::vector<wcg::LinearImage> pool;
  std::vector<std::string> pool_ids;
  for (size_t i = 0; i < loaded.size(); ++i) {
    if (wcg::out_of_gamut_fraction(loaded[i], ref, filter_gamut) > a.min_oog) {
      pool.push_back(loaded[i]);
      pool_ids.push_back(ids[i]);
    }
  }
  if (pool.empty())
    throw std::runtime_error("benchmark: no candidate images left after the WCG-pixel filter");

  wcg::GainTable table;
  if (!a.dir_a.empty() || !a.dir_b.empty()) {
    if (a.dir_a.empty() || a.dir_b.empty() || targets.size() != 1)
      throw std::runtime_error(
          "benchmark: --dir-a/--dir-b must both be given and need exactly one target");
    table.image_ids = pool_ids;
    table.target_names = {targets[0].name};
    table.gains.assign(pool.size(), std::vector<double>(1, 0.0));
    wcg::parallel_for(pool.size(), [&](size_t i) {
      const auto load_mapped = [&](const std::string& dir) {
        const fs::path p = fs::path(dir) / pool_ids[i];
        const wcg::LinearImage m =
            wcg::load_image(p.string(), transfer_or_default(a.transfer, p), targets[0]);
        return wcg::convert_gamut(m, targets[0], ref);
      };
      table.gains[i][0] = wcg::cid(pool[i], load_mapped(a.dir_a)) -
                          wcg::cid(pool[i], load_mapped(a.dir_b));
    });
  } else {
    table = wcg::compute_gain_table(pool, pool_ids, ref, targets,
                                    wcg::parse_mapper_kind(a.mapper_a),
                                    wcg::parse_mapper_kind(a.mapper_b));
  }

  // framework features: successive reduction over the nested feature chain
  const std::vector<wcg::Gamut> feature_targets = resolve_gamuts(a.feature_targets);
  std::vector<std::vector<double>> framework_feats(pool.size());
  wcg::parallel_for(pool.size(), [&](size_t i) {
    framework_feats[i] =
        wcg::characterize(pool[i], ref, feature_targets, wcg::MapperKind::Clip).values;
  });

  const wcg::SelectionFeature baseline_kind = wcg::parse_selection_feature(a.select);
  std::vector<std::vector<double>> baseline_feats;
  if (baseline_kind == wcg::SelectionFeature::Colorfulness) {
    baseline_feats.resize(pool.size());
    const auto tf = a.transfer.empty() ? wcg::TransferFunction::srgb()
                                       : wcg::TransferFunction::parse(a.transfer);
    wcg::parallel_for(pool.size(), [&](size_t i) {
      baseline_feats[i] = {wcg::colorfulness(pool[i], tf)};
    });
  } else if (baseline_kind == wcg::SelectionFeature::Framework) {
    baseline_feats = framework_feats;
  }

  wcg::SelectionConfig cfg;
  cfg.k = a.k;
  cfg.per_cluster = a.per_cluster;
  cfg.seed = a.seed;
  const wcg::BenchmarkReport rep =
      wcg::benchmark(table, framework_feats, baseline_feats, baseline_kind, cfg, a.trials);

  const json config{{"ref", ref.name},
                    {"targets", split_list(a.targets)},
                    {"feature_targets", split_list(a.feature_targets)},
                    {"mapper_a", a.mapper_a},
                    {"mapper_b", a.mapper_b},
                    {"select", a.select},
                    {"k", a.k},
                    {"per_cluster", a.per_cluster},
                    {"trials", a.trials},
                    {"min_oog_fraction", a.min_oog},
                    {"filter_gamut", filter_gamut.name},
                    {"cid_variant", wcg::CidConfig::kVariant},
                    {"pool_size", pool.size()}};

  // per-image gains CSV
  std::ostringstream csv;
  csv << "# format: wcg-gains v" << wcg::kFormatVersion << "\n";
  csv << "# tool_version: " << wcg::kVersion << "\n";
  csv << "# config: " << config.dump() << "\n";
  csv << "# seed: " << a.seed << "\n";
  csv << "image,target,gain\n";
  for (const auto& rec : table.records())
    csv << rec.image_id << "," << rec.target_name << "," << wcg::format_g9(rec.gain)
        << "\n";
  write_text(a.out_csv, csv.str());

  json j = meta_block("wcg-benchmark", config);
  j["seed"] = a.seed;
  const double threshold = a.alpha / static_cast<double>(rep.comparison_count);
  j["bonferroni"] = json{{"alpha", a.alpha},
                         {"comparisons", rep.comparison_count},
                         {"threshold", j9(threshold)}};
  json methods = json::array();
  for (const auto& m : rep.methods) {
    json per_target = json::array();
    for (size_t t = 0; t < rep.table.target_names.size(); ++t) {
      per_target.push_back(
          json{{"target", rep.table.target_names[t]},
               {"gain_mean_avg", j9(wcg::mean(m.trial_means[t]))},
               {"gain_mean_sd", j9(std::sqrt(wcg::sample_variance(m.trial_means[t])))},
               {"gain_sd_avg", j9(wcg::mean(m.trial_stds[t]))},
               {"gain_sd_sd", j9(std::sqrt(wcg::sample_variance(m.trial_stds[t])))}});
    }
    methods.push_back(json{{"method", m.method}, {"per_target", per_target}});
  }
  j["methods"] = methods;
  json tests = json::array();
  for (const auto& ct : rep.tests) {
    tests.push_back(json{{"target", ct.target_name},
                         {"f_on_means", test_to_json(ct.f_on_means, threshold)},
                         {"f_on_stds", test_to_json(ct.f_on_stds, threshold)},
                         {"t_on_means", test_to_json(ct.t_on_means, threshold)},
                         {"t_on_stds", test_to_json(ct.t_on_stds, threshold)}});
  }
  j["tests"] = tests;
  write_text(a.out, j.dump(2) + "\n");
  std::cout << "wrote " << a.out_csv << " and " << a.out << "\n";
}

struct StatsArgs {
  std::string csv, col_a, col_b, out;
  std::string side = "two-sided";
};

void run_stats(const StatsArgs& a) {
  const Csv csv = read_csv(a.csv);
  const auto xa = csv.numeric_column(a.col_a);
  const auto xb = csv.numeric_column(a.col_b);
  wcg::TestSide side = wcg::TestSide::TwoSided;
  if (a.side == "greater") side = wcg::TestSide::Greater;
  else if (a.side == "less") side = wcg::TestSide::Less;
  else if (a.side != "two-sided") throw std::runtime_error("unknown --side " + a.side);

  json j = meta_block("wcg-stats", json{{"csv", a.csv},
                                        {"col_a", a.col_a},
                                        {"col_b", a.col_b},
                                        {"side", a.side}});
  j["welch_t"] = test_to_json(wcg::welch_t(xa, xb, side), 0.05);
  j["f_test"] = test_to_json(wcg::f_test(xa, xb, side), 0.05);
  if (xa.size() == xb.size()) {
    try {
      j["pearson"] = j9(wcg::pearson(xa, xb));
    } catch (const std::invalid_argument&) {
      j["pearson"] = nullptr;
    }
  }
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else {
    write_text(a.out, text);
    std::cout << "wrote " << a.out << "\n";
  }
}

struct GenCorpusArgs {
  std::string out, gamut = "P3", size = "256x256", transfer = "srgb";
  size_t sweeps = 24, inset = 4, noise = 4;
  double violence = 1.0;
  uint64_t seed = 77;
  int bit_depth = 16;
};

void run_gen_corpus(const GenCorpusArgs& a) {
  const wcg::Gamut source = wcg::resolve_gamut(a.gamut);
  wcg::CorpusSpec spec;
  const auto x = a.size.find('x');
  if (x == std::string::npos) throw std::runtime_error("--size must look like 256x256");
  spec.width = std::stoi(a.size.substr(0, x));
  spec.height = std::stoi(a.size.substr(x + 1));
  spec.sweep_count = a.sweeps;
  spec.inset_count = a.inset;
  spec.noise_count = a.noise;
  spec.max_violence = a.violence;
  spec.seed = a.seed;

  fs::create_directories(a.out);
  const auto corpus = wcg::generate_corpus(source, spec);
  const wcg::TransferFunction tf = wcg::TransferFunction::parse(a.transfer);
  json files = json::array();
  for (const auto& ci : corpus) {
    const std::string name = ci.name + ".png";
    wcg::save_image(ci.image, (fs::path(a.out) / name).string(), tf, a.bit_depth);
    files.push_back(name);
  }
  json j = meta_block("wcg-corpus", json{{"gamut", source.name},
                                         {"size", a.size},
                                         {"sweeps", a.sweeps},
                                         {"inset", a.inset},
                                         {"noise", a.noise},
                                         {"violence", a.violence},
                                         {"transfer", a.transfer},
                                         {"bit_depth", a.bit_depth}});
  j["seed"] = a.seed;
  j["files"] = files;
  write_text((fs::path(a.out) / "manifest.json").string(), j.dump(2) + "\n");
  std::cout << "wrote " << corpus.size() << " images to " << a.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WCG content characterization toolkit"};
  app.require_subcommand(1);

  MapArgs map_args;
  auto* map_cmd = app.add_subcommand("map", "Apply a gamut mapping operator to one image");
  map_cmd->add_option("--op", map_args.op, "clip|compress")->capture_default_str();
  map_cmd->add_option("--src", map_args.src, "source gamut (name or JSON path)")->required();
  map_cmd->add_option("--dst", map_args.dst, "target gamut")->required();
  map_cmd->add_option("--in", map_args.in, "input image")->required();
  map_cmd->add_option("--out", map_args.out, "output image")->required();
  map_cmd->add_option("--transfer", map_args.transfer, "srgb|linear|gamma:<g>");
  map_cmd->add_option("--bit-depth", map_args.bit_depth, "8|16 (32 = float TIFF)")
      ->capture_default_str();

  CharacterizeArgs ch_args;
  auto* ch_cmd =
      app.add_subcommand("characterize", "Perceptual-difference features per image");
  ch_cmd->add_option("--images", ch_args.images, "directory of images")->required();
  ch_cmd->add_option("--out", ch_args.out, "output CSV")->capture_default_str();
  ch_cmd->add_option("--ref", ch_args.ref, "reference gamut")->capture_default_str();
  ch_cmd->add_option("--targets", ch_args.targets, "comma list, nested large-to-small")
      ->capture_default_str();
  ch_cmd->add_option("--mapper", ch_args.mapper, "clip|compress")->capture_default_str();
  ch_cmd->add_option("--transfer", ch_args.transfer, "input transfer override");
  ch_cmd->add_option("--alpha", ch_args.alpha, "sigmoid scale")->capture_default_str();
  ch_cmd->add_option("--beta", ch_args.beta, "sigmoid slope")->capture_default_str();
  ch_cmd->add_option("--gamma", ch_args.gamma, "sigmoid midpoint")->capture_default_str();

  CriteriaArgs cr_args;
  auto* cr_cmd = app.add_subcommand("criteria", "Dataset criteria from a characterize CSV");
  cr_cmd->add_option("--features", cr_args.features, "characterize CSV")->required();
  cr_cmd->add_option("--out", cr_args.out, "output JSON")->capture_default_str();
  cr_cmd->add_option("--bins", cr_args.bins, "histogram bins per dimension")
      ->capture_default_str();
  cr_cmd->add_option("--scale", cr_args.scale, "normalization (max MOS)")
      ->capture_default_str();

  SelectArgs se_args;
  auto* se_cmd = app.add_subcommand("select", "Representative content selection");
  se_cmd->add_option("--features", se_args.features, "characterize CSV (framework/random)");
  se_cmd->add_option("--images", se_args.images, "image dir (colorfulness)");
  se_cmd->add_option("--feature", se_args.feature, "framework|colorfulness|random")
      ->capture_default_str();
  se_cmd->add_option("--k", se_args.k, "cluster count")->capture_default_str();
  se_cmd->add_option("--per-cluster", se_args.per_cluster, "images per cluster")
      ->capture_default_str();
  se_cmd->add_option("--seed", se_args.seed, "random seed")->capture_default_str();
  se_cmd->add_option("--trials", se_args.trials, "robustness trials")->capture_default_str();
  se_cmd->add_flag("--robustness", se_args.robustness, "run the repeated-selection PCC protocol");
  se_cmd->add_flag("--linear-colorfulness", se_args.linear_colorfulness,
                   "compute colorfulness on linear data (ablation)");
  se_cmd->add_option("--transfer", se_args.transfer, "input transfer override");
  se_cmd->add_option("--out", se_args.out, "output JSON")->capture_default_str();

  BenchmarkArgs be_args;
  auto* be_cmd = app.add_subcommand("benchmark", "CID-gain comparison of two gamut mappers");
  be_cmd->add_option("--images", be_args.images, "pool directory")->required();
  be_cmd->add_option("--ref", be_args.ref, "reference gamut")->capture_default_str();
  be_cmd->add_option("--targets", be_args.targets, "target gamuts")->capture_default_str();
  be_cmd->add_option("--feature-targets", be_args.feature_targets,
                     "nested chain for the framework features")
      ->capture_default_str();
  be_cmd->add_option("--mapper-a", be_args.mapper_a, "operator A")->capture_default_str();
  be_cmd->add_option("--mapper-b", be_args.mapper_b, "operator B")->capture_default_str();
  be_cmd->add_option("--dir-a", be_args.dir_a, "pre-mapped images for A (single target)");
  be_cmd->add_option("--dir-b", be_args.dir_b, "pre-mapped images for B (single target)");
  be_cmd->add_option("--select", be_args.select, "baseline selection feature")
      ->capture_default_str();
  be_cmd->add_option("--k", be_args.k, "cluster count")->capture_default_str();
  be_cmd->add_option("--per-cluster", be_args.per_cluster, "images per cluster")
      ->capture_default_str();
  be_cmd->add_option("--trials", be_args.trials, "selection trials")->capture_default_str();
  be_cmd->add_option("--seed", be_args.seed, "random seed")->capture_default_str();
  be_cmd->add_option("--min-oog", be_args.min_oog, "WCG-pixel fraction filter")
      ->capture_default_str();
  be_cmd->add_option("--filter-gamut", be_args.filter_gamut, "filter reference gamut")
      ->capture_default_str();
  be_cmd->add_option("--alpha", be_args.alpha, "significance level before correction")
      ->capture_default_str();
  be_cmd->add_option("--transfer", be_args.transfer, "input transfer override");
  be_cmd->add_option("--out-csv", be_args.out_csv, "per-image gains CSV")
      ->capture_default_str();
  be_cmd->add_option("--out", be_args.out, "stats JSON")->capture_default_str();

  StatsArgs st_args;
  auto* st_cmd = app.add_subcommand("stats", "Welch t / F tests on two CSV columns");
  st_cmd->add_option("--csv", st_args.csv, "input CSV")->required();
  st_cmd->add_option("--col-a", st_args.col_a, "first column name")->required();
  st_cmd->add_option("--col-b", st_args.col_b, "second column name")->required();
  st_cmd->add_option("--side", st_args.side, "two-sided|greater|less")->capture_default_str();
  st_cmd->add_option("--out", st_args.out, "output JSON (stdout if omitted)");

  GenCorpusArgs gc_args;
  auto* gc_cmd = app.add_subcommand("gen-corpus", "Deterministic synthetic image corpus");
  gc_cmd->add_option("--out", gc_args.out, "output directory")->required();
  gc_cmd->add_option("--gamut", gc_args.gamut, "source gamut")->capture_default_str();
  gc_cmd->add_option("--size", gc_args.size, "WxH")->capture_default_str();
  gc_cmd->add_option("--sweeps", gc_args.sweeps, "sweep image count")->capture_default_str();
  gc_cmd->add_option("--inset", gc_args.inset, "in-gamut image count")->capture_default_str();
  gc_cmd->add_option("--noise", gc_args.noise, "noise image count")->capture_default_str();
  gc_cmd->add_option("--violence", gc_args.violence,
                     "0 = natural chroma statistics, 1 = boundary-straddling sweeps")
      ->capture_default_str();
  gc_cmd->add_option("--seed", gc_args.seed, "random seed")->capture_default_str();
  gc_cmd->add_option("--bit-depth", gc_args.bit_depth, "8|16")->capture_default_str();
  gc_cmd->add_option("--transfer", gc_args.transfer, "encoding for the PNG files")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return kExitOk;
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (map_cmd->parsed()) run_map(map_args);
    else if (ch_cmd->parsed()) run_characterize(ch_args);
    else if (cr_cmd->parsed()) run_criteria(cr_args);
    else if (se_cmd->parsed()) run_select(se_args);
    else if (be_cmd->parsed()) run_benchmark(be_args);
    else if (st_cmd->parsed()) run_stats(st_args);
    else if (gc_cmd->parsed()) run_gen_corpus(gc_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
