#include "sdc/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "sdc/benchmark.hpp"
#include "sdc/coeff_container.hpp"
#include "sdc/corpus.hpp"
#include "sdc/dct_pipeline.hpp"
#include "sdc/embedders.hpp"
#include "sdc/error.hpp"
#include "sdc/metrics.hpp"
#include "sdc/steganalysis.hpp"

namespace sdc::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string output;
  std::string method = "mde";
  int bits_per_group = 3;
  int quality_factor = 75;
  std::string quant_table;
  std::optional<std::uint64_t> seed;
  std::string message_file;
  std::optional<double> rate;
  std::uint64_t payload_seed = 1;
  std::string payload_out;
  std::string report_file;
  bool csv = false;
  std::string cover;

  // benchmark
  std::vector<double> rates{5, 10, 15, 20};
  std::vector<int> qfs{50, 75};
  std::vector<std::string> methods{"f5", "mde"};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  unsigned threads = 0;

  // gen-corpus
  std::size_t count = 200;
  int width = 64;
  int height = 64;
  std::uint64_t corpus_seed = 1;
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

bool is_container(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  return in.gcount() == 4 && std::equal(kContainerMagic.begin(), kContainerMagic.end(), magic);
}

QuantTable table_for(const RunConfig& cfg) {
  if (cfg.quant_table.empty()) return scale_quant_table(kStandardLuminanceTable, cfg.quality_factor);
  const auto base = read_base_table(cfg.quant_table);
  return scale_quant_table(base, cfg.quality_factor);
}

void validate_common(const RunConfig& cfg) {
  if (cfg.quality_factor < 1 || cfg.quality_factor > 100) {
    throw ParameterError("--qf must be in [1,100], got " + std::to_string(cfg.quality_factor));
  }
}

EmbedParams params_for(const RunConfig& cfg) {
  EmbedParams p;
  p.method = parse_method(cfg.method);
  p.bits_per_group = cfg.bits_per_group;
  if (p.method != Method::kMde && (p.bits_per_group < 1 || p.bits_per_group > HammingMatrix::kMaxBits)) {
    throw ParameterError("--v must be in [1,8] for " + cfg.method);
  }
  return p;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int cmd_compress(const RunConfig& cfg, std::ostream& out) {
  validate_common(cfg);
  const QuantTable table = table_for(cfg);
  const PixelImage img = read_pgm(cfg.input);
  const CoeffPlane plane = compress(img, table);
  write_container(plane, cfg.output);
  out << "blocks=" << plane.block_count() << "\ncapacity=" << capacity_of(plane) << "\n";
  return kOk;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
  const EmbedParams params = params_for(cfg);
  validate_common(cfg);
  if (cfg.message_file.empty() == !cfg.rate.has_value()) {
    throw ParameterError("exactly one of --message or --rate is required");
  }
  if (cfg.rate && (*cfg.rate < 0.0 || *cfg.rate > 100.0)) throw ParameterError("--rate must be in [0,100]");

  std::optional<PixelImage> cover_img;
  CoeffPlane cover;
  if (is_container(cfg.input)) {
    if (params.method != Method::kF5) {
      throw UnsupportedInputError(cfg.method +
                                  " needs compress-time rounding errors; pass the cover image, not a container");
    }
    cover = read_container(cfg.input);
  } else {
    cover_img = read_pgm(cfg.input);
    cover = compress(*cover_img, table_for(cfg));
  }

  const std::size_t capacity = capacity_of(cover);
  Bits payload = cfg.rate ? rate_payload(capacity, *cfg.rate, cfg.payload_seed)
                          : bytes_to_bits(read_file(cfg.message_file));
  if (!cfg.payload_out.empty()) write_bytes(cfg.payload_out, bits_to_bytes(payload));

  auto embedded = embed(extract_stream(cover, cfg.seed), payload, params);
  const CoeffPlane stego = write_back(embedded.stream, cover);
  write_container(stego, cfg.output);

  const auto& rep = embedded.report;
  std::optional<DistortionSummary> dist;
  std::optional<double> db;
  if (cover.has_pre_round()) {
    dist = distortion(cover, stego);
    db = psnr(*cover_img, decompress(stego));
  }
  const double rate = capacity ? embedding_rate(payload.size(), capacity) : 0.0;

  std::ostringstream report;
  if (cfg.csv) {
    report << "method,v,qf,capacity,payload_bits,rate,modifications,shrinkages,consumed,"
           << csv_header_distortion() << ",psnr_db\n";
    report << cfg.method << ',' << (params.method == Method::kMde ? 0 : params.bits_per_group) << ','
           << cover.quant.quality_factor << ',' << capacity << ',' << payload.size() << ',' << fmt("%.4f", rate)
           << ',' << rep.modifications << ',' << rep.shrinkages << ',' << rep.coefficients_consumed << ','
           << (dist ? to_csv_row(*dist) : std::string(",,,,")) << ','
           << (db ? fmt("%.4f", *db) : std::string(cover_img ? "inf" : "")) << "\n";
  } else {
    report << "method=" << cfg.method << "\n";
    if (params.method != Method::kMde) report << "v=" << params.bits_per_group << "\n";
    report << "qf=" << cover.quant.quality_factor << "\ncapacity=" << capacity << "\npayload_bits=" << payload.size()
           << "\nembedding_rate=" << fmt("%.4f", rate) << "\nmodifications=" << rep.modifications
           << "\nshrinkages=" << rep.shrinkages << "\ncoefficients_consumed=" << rep.coefficients_consumed << "\n";
    if (dist) report << to_key_value(*dist);
    if (cover_img) report << "psnr_db=" << (db ? fmt("%.4f", *db) : std::string("identical")) << "\n";
  }
  if (cfg.report_file.empty()) {
    out << report.str();
  } else {
    write_file(cfg.report_file, report.str());
  }
  return kOk;
}

int cmd_extract(const RunConfig& cfg, std::ostream& out) {
  const EmbedParams params = params_for(cfg);
  CoeffPlane stego;
  try {
    stego = read_container(cfg.input);
  } catch (const FormatError& e) {
    throw CorruptStegoError(e.what());
  }
  const Bits bits = extract(extract_stream(stego, cfg.seed), params);
  write_bytes(cfg.output, bits_to_bytes(bits));
  out << "payload_bits=" << bits.size() << "\n";
  return kOk;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
  const CoeffPlane plane = read_container(cfg.input);
  write_pgm(cfg.output, decompress(plane));
  out << "wrote " << cfg.output << " (" << plane.width << "x" << plane.height << ")\n";
  return kOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const CoeffPlane plane = read_container(cfg.input);
  const auto chi = chi_square_attack(plane);
  const auto features = extract_features(plane);
  std::optional<DistortionSummary> dist;
  std::optional<double> db;
  bool have_cover = false;
  if (!cfg.cover.empty()) {
    const PixelImage cover_img = read_pgm(cfg.cover);
    const CoeffPlane cover = compress(cover_img, plane.quant);
    dist = distortion(cover, plane);
    db = psnr(cover_img, decompress(plane));
    have_cover = true;
  }
  const std::string chi_p = chi.sufficient ? fmt("%.6g", chi.p_value) : std::string("insufficient");
  if (cfg.csv) {
    out << "capacity,chi_square,chi_dof,chi_p";
    for (int v = -kHistogramRange; v <= kHistogramRange; ++v) out << ",h" << v;
    out << ",zero_ratio,mean_abs,variance";
    if (have_cover) out << ',' << csv_header_distortion() << ",psnr_db";
    out << "\n" << capacity_of(plane) << ',' << fmt("%.6f", chi.statistic) << ',' << chi.degrees_of_freedom << ','
        << chi_p;
    for (double f : features) out << ',' << fmt("%.6f", f);
    if (have_cover) out << ',' << to_csv_row(*dist) << ',' << (db ? fmt("%.4f", *db) : std::string("inf"));
    out << "\n";
    return kOk;
  }
  out << "capacity=" << capacity_of(plane) << "\nchi_square=" << fmt("%.6f", chi.statistic)
      << "\nchi_dof=" << chi.degrees_of_freedom << "\nchi_p_value=" << chi_p << "\n";
  for (int v = -kHistogramRange; v <= kHistogramRange; ++v) {
    out << "hist[" << v << "]=" << fmt("%.6f", features[static_cast<std::size_t>(v + kHistogramRange)]) << "\n";
  }
  out << "zero_ratio=" << fmt("%.6f", features[kHistogramBins]) << "\nmean_abs="
      << fmt("%.6f", features[kHistogramBins + 1]) << "\nvariance=" << fmt("%.6f", features[kHistogramBins + 2])
      << "\n";
  if (have_cover) {
    out << to_key_value(*dist) << "psnr_db=" << (db ? fmt("%.4f", *db) : std::string("identical")) << "\n";
  }
  return kOk;
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchmarkConfig bc;
  bc.quality_factors = cfg.qfs;
  bc.rates = cfg.rates;
  bc.methods.clear();
  for (const auto& m : cfg.methods) bc.methods.push_back(parse_method(m));
  bc.seeds = cfg.seeds;
  bc.bits_per_group = cfg.bits_per_group;
  bc.payload_seed = cfg.payload_seed;
  bc.threads = cfg.threads;
  for (int qf : bc.quality_factors) {
    if (qf < 1 || qf > 100) throw ParameterError("--qfs entries must be in [1,100]");
  }
  if (bc.bits_per_group < 1 || bc.bits_per_group > HammingMatrix::kMaxBits) throw ParameterError("--v must be in [1,8]");
  if (bc.seeds.empty() || bc.rates.empty() || bc.methods.empty() || bc.quality_factors.empty()) {
    throw ParameterError("benchmark grid must be non-empty");
  }

  const auto paths = list_corpus(cfg.input);
  if (paths.empty()) throw ParameterError("no .pgm files in " + cfg.input);
  std::vector<PixelImage> covers;
  for (const auto& p : paths) covers.push_back(read_pgm(p));

  const BenchmarkResult result = run_benchmark(covers, bc);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";

  const fs::path dir = cfg.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const std::string table = benchmark_markdown(result, bc);
  write_file(dir / "error_probability.csv", benchmark_csv(result));
  write_file(dir / "distortion.csv", distortion_csv(result));
  write_file(dir / "table.md", table);
  out << table;
  for (const auto& c : result.cells) {
    if (!c.ok) err << "cell " << method_name(c.method) << "/qf" << c.quality_factor << "/" << c.rate << "% failed: "
                   << c.error << "\n";
  }
  return result.all_ok() ? kOk : kCapacityError;
}

int cmd_gen_corpus(const RunConfig& cfg, std::ostream& out) {
  if (cfg.count < 1) throw ParameterError("--n must be at least 1");
  const auto corpus = generate_corpus(cfg.count, cfg.width, cfg.height, cfg.corpus_seed);
  const auto paths = write_corpus(corpus, cfg.output);
  out << "wrote " << paths.size() << " covers to " << cfg.output << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"DCT-domain steganography: F5, MME and MDE embedding with steganalysis tools", "sdc"};
  app.require_subcommand(1);

  auto* compress_cmd = app.add_subcommand("compress", "Compress a PGM image into an SDC1 container");
  compress_cmd->add_option("input", cfg.input, "Cover image (binary PGM)")->required();
  compress_cmd->add_option("-o,--output", cfg.output, "Container path")->required();
  compress_cmd->add_option("--qf", cfg.quality_factor, "Quality factor 1..100");
  compress_cmd->add_option("--quant-table", cfg.quant_table, "Base table file: 64 integers, row-major");

  auto* embed_cmd = app.add_subcommand("embed", "Embed a message and write a stego container");
  embed_cmd->add_option("input", cfg.input, "Cover image (PGM) or, for f5 only, a container")->required();
  embed_cmd->add_option("-o,--output", cfg.output, "Stego container path")->required();
  embed_cmd->add_option("--method", cfg.method, "f5, mme or mde");
  embed_cmd->add_option("--v", cfg.bits_per_group, "Bits per matrix-coding group (f5, mme)");
  embed_cmd->add_option("--qf", cfg.quality_factor, "Quality factor 1..100");
  embed_cmd->add_option("--quant-table", cfg.quant_table, "Base table file: 64 integers, row-major");
  embed_cmd->add_option("--seed", cfg.seed, "Key for the coefficient permutation");
  embed_cmd->add_option("--message", cfg.message_file, "Message file (raw bytes)");
  embed_cmd->add_option("--rate", cfg.rate, "Random payload of rate% of capacity");
  embed_cmd->add_option("--payload-seed", cfg.payload_seed, "Seed for --rate payloads");
  embed_cmd->add_option("--payload-out", cfg.payload_out, "Write the embedded payload bytes here");
  embed_cmd->add_option("--report", cfg.report_file, "Write the report here instead of stdout");
  embed_cmd->add_flag("--csv", cfg.csv, "CSV report");

  auto* extract_cmd = app.add_subcommand("extract", "Recover the message from a stego container");
  extract_cmd->add_option("input", cfg.input, "Stego container")->required();
  extract_cmd->add_option("-o,--output", cfg.output, "Message output path")->required();
  extract_cmd->add_option("--method", cfg.method, "f5, mme or mde");
  extract_cmd->add_option("--v", cfg.bits_per_group, "Bits per matrix-coding group (f5, mme)");
  extract_cmd->add_option("--seed", cfg.seed, "Key used at embed time");

  auto* render_cmd = app.add_subcommand("render", "Decompress a container to PGM");
  render_cmd->add_option("input", cfg.input, "Container")->required();
  render_cmd->add_option("-o,--output", cfg.output, "PGM output path")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Chi-square attack, features and distortion of a container");
  analyze_cmd->add_option("input", cfg.input, "Container")->required();
  analyze_cmd->add_option("--cover", cfg.cover, "Original cover PGM for distortion and PSNR");
  analyze_cmd->add_flag("--csv", cfg.csv, "CSV output");

  auto* bench_cmd = app.add_subcommand("benchmark", "Error-probability grid over a corpus");
  bench_cmd->add_option("corpus", cfg.input, "Directory of cover PGMs")->required();
  bench_cmd->add_option("-o,--output", cfg.output, "Output directory")->required();
  bench_cmd->add_option("--rates", cfg.rates, "Embedding rates in percent")->delimiter(',');
  bench_cmd->add_option("--qfs", cfg.qfs, "Quality factors")->delimiter(',');
  bench_cmd->add_option("--methods", cfg.methods, "Methods")->delimiter(',');
  bench_cmd->add_option("--seeds", cfg.seeds, "Train/test split seeds")->delimiter(',');
  bench_cmd->add_option("--v", cfg.bits_per_group, "Bits per matrix-coding group (f5, mme)");
  bench_cmd->add_option("--payload-seed", cfg.payload_seed, "Payload seed");
  bench_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

  auto* corpus_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic cover corpus");
  corpus_cmd->add_option("-o,--output", cfg.output, "Output directory")->required();
  corpus_cmd->add_option("--n", cfg.count, "Number of images");
  corpus_cmd->add_option("--width", cfg.width, "Width in pixels");
  corpus_cmd->add_option("--height", cfg.height, "Height in pixels");
  corpus_cmd->add_option("--seed", cfg.corpus_seed, "Corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*compress_cmd) return cmd_compress(cfg, out);
    if (*embed_cmd) return cmd_embed(cfg, out);
    if (*extract_cmd) return cmd_extract(cfg, out);
    if (*render_cmd) return cmd_render(cfg, out);
    if (*analyze_cmd) return cmd_analyze(cfg, out);
    if (*bench_cmd) return cmd_benchmark(cfg, out, err);
    if (*corpus_cmd) return cmd_gen_corpus(cfg, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const CorruptStegoError& e) {
    err << "error: corrupt stego: " << e.what() << "\n";
    return kCorruptStego;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace sdc::cli
