#include "animlens/bvh.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
    } else if (c == '{' || c == '}') {
      tokens.push_back({text.substr(i, 1), line});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '{' && text[i] != '}') {
        ++i;
      }
      tokens.push_back({text.substr(start, i - start), line});
    }
  }
  return tokens;
}

enum class Channel { kXpos, kYpos, kZpos, kXrot, kYrot, kZrot };

struct JointChannels {
  std::size_t joint;
  std::vector<Channel> channels;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  AnimationClip parse(std::string id) {
    expect("HIERARCHY");
    const Token& root = next("ROOT");
    if (root.text != "ROOT") fail("expected ROOT", root.line);
    parse_joint(std::nullopt, root.line);
    if (at_end()) throw ParseError("no motion section", {{"line", last_line()}});
    const Token& motion = next("MOTION");
    if (motion.text != "MOTION") {
      fail("unexpected '" + std::string(motion.text) + "' after hierarchy",
           motion.line);
    }
    expect("Frames:");
    const Token& frames_token = next("frame count");
    const auto frame_count = parse_count(frames_token);
    expect("Frame");
    expect("Time:");
    const Token& time_token = next("frame time");
    const double frame_time = parse_number(time_token);
    if (!(frame_time > 0.0)) fail("frame time must be positive", time_token.line);
    if (frame_count == 0) fail("clip has no frames", frames_token.line);

    std::shared_ptr<const Skeleton> skeleton;
    try {
      skeleton = std::make_shared<const Skeleton>(joints_, Axis::kY,
                                                   infer_chains(joints_));
    } catch (const StructuralError& e) {
      throw ParseError(std::string("invalid hierarchy: ") + e.what(), e.detail());
    }

    std::size_t channel_total = 0;
    for (const auto& jc : channels_) channel_total += jc.channels.size();
    const std::size_t expected = frame_count * channel_total;
    const std::size_t available = tokens_.size() - pos_;
    if (available != expected) {
      const std::size_t line = available > expected
                                   ? tokens_[pos_ + expected].line
                                   : last_line();
      throw ParseError("motion data has " + std::to_string(available) +
                           " values, expected " + std::to_string(expected) +
                           " (" + std::to_string(frame_count) + " frames x " +
                           std::to_string(channel_total) + " channels)",
                       {{"line", line}});
    }

    std::vector<Frame> frames;
    frames.reserve(frame_count);
    for (std::size_t f = 0; f < frame_count; ++f) {
      Frame frame;
      frame.rotations.assign(joints_.size(), Quat::Identity());
      frame.root_translation = joints_.front().rest_offset;
      for (const auto& jc : channels_) {
        Quat rotation = Quat::Identity();
        Vec3 translation = Vec3::Zero();
        for (Channel ch : jc.channels) {
          const double value = parse_number(tokens_[pos_++]);
          switch (ch) {
            case Channel::kXpos: translation.x() = value; break;
            case Channel::kYpos: translation.y() = value; break;
            case Channel::kZpos: translation.z() = value; break;
            case Channel::kXrot: rotation = rotation * axis_rotation(value, Vec3::UnitX()); break;
            case Channel::kYrot: rotation = rotation * axis_rotation(value, Vec3::UnitY()); break;
            case Channel::kZrot: rotation = rotation * axis_rotation(value, Vec3::UnitZ()); break;
          }
        }
        frame.rotations[jc.joint] = rotation.normalized();
        if (jc.joint == 0) frame.root_translation += translation;
      }
      frames.push_back(std::move(frame));
    }
    const double fps = std::max(1.0, std::round(1.0 / frame_time));
    return AnimationClip(std::move(id), std::move(skeleton), fps,
                         std::move(frames));
  }

 private:
  static Quat axis_rotation(double degrees, const Vec3& axis) {
    return Quat(Eigen::AngleAxisd(degrees * std::numbers::pi / 180.0, axis));
  }

  void parse_joint(std::optional<std::size_t> parent, std::size_t line) {
    std::string name = read_name(line);
    const std::size_t index = joints_.size();
    joints_.push_back(Joint{name, parent, Vec3::Zero()});
    expect("{");
    bool have_offset = false;
    while (true) {
      const Token& token = next("'}'");
      if (token.text == "}") break;
      if (token.text == "OFFSET") {
        joints_[index].rest_offset = read_vec3();
        have_offset = true;
      } else if (token.text == "CHANNELS") {
        parse_channels(index);
      } else if (token.text == "JOINT") {
        parse_joint(index, token.line);
      } else if (token.text == "End") {
        const Token& site = next("Site");
        if (site.text != "Site") fail("expected 'Site' after 'End'", site.line);
        expect("{");
        expect("OFFSET");
        const Vec3 offset = read_vec3();
        expect("}");
        joints_.push_back(Joint{joints_[index].name + "_end", index, offset});
      } else if (token.text == "MOTION") {
        throw ParseError("hierarchy is not closed before MOTION",
                         {{"line", token.line}});
      } else {
        fail("unexpected token '" + std::string(token.text) + "' in joint '" +
                 name + "'",
             token.line);
      }
    }
    if (!have_offset) fail("joint '" + name + "' has no OFFSET", line);
  }

  void parse_channels(std::size_t joint) {
    const Token& count_token = next("channel count");
    const std::size_t count = parse_count(count_token);
    JointChannels jc{joint, {}};
    for (std::size_t c = 0; c < count; ++c) {
      const Token& t = next("channel name");
      if (t.text == "Xposition") jc.channels.push_back(Channel::kXpos);
      else if (t.text == "Yposition") jc.channels.push_back(Channel::kYpos);
      else if (t.text == "Zposition") jc.channels.push_back(Channel::kZpos);
      else if (t.text == "Xrotation") jc.channels.push_back(Channel::kXrot);
      else if (t.text == "Yrotation") jc.channels.push_back(Channel::kYrot);
      else if (t.text == "Zrotation") jc.channels.push_back(Channel::kZrot);
      else fail("unknown channel '" + std::string(t.text) + "'", t.line);
    }
    channels_.push_back(std::move(jc));
  }

  std::string read_name(std::size_t line) {
    std::string name;
    while (!at_end() && tokens_[pos_].line == line && tokens_[pos_].text != "{") {
      if (!name.empty()) name += ' ';
      name += tokens_[pos_++].text;
    }
    if (name.empty()) fail("joint without a name", line);
    return name;
  }

  Vec3 read_vec3() {
    Vec3 v;
    for (int k = 0; k < 3; ++k) v[k] = parse_number(next("offset value"));
    return v;
  }

  static double parse_number(const Token& token) {
    double value = 0.0;
    const char* begin = token.text.data();
    const char* end = begin + token.text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      fail("expected a number, got '" + std::string(token.text) + "'", token.line);
    }
    return value;
  }

  static std::size_t parse_count(const Token& token) {
    std::size_t value = 0;
    const char* end = token.text.data() + token.text.size();
    auto [ptr, ec] = std::from_chars(token.text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      fail("expected a count, got '" + std::string(token.text) + "'", token.line);
    }
    return value;
  }

  const Token& next(const char* what) {
    if (at_end()) {
      if (!saw_motion()) {
        throw ParseError("no motion section", {{"line", last_line()}});
      }
      throw ParseError(std::string("unexpected end of input, expected ") + what,
                       {{"line", last_line()}});
    }
    return tokens_[pos_++];
  }

  void expect(std::string_view word) {
    const Token& token = next(std::string(word).c_str());
    if (token.text != word) {
      fail("expected '" + std::string(word) + "', got '" +
               std::string(token.text) + "'",
           token.line);
    }
  }

  bool saw_motion() const {
    for (std::size_t i = 0; i < pos_; ++i) {
      if (tokens_[i].text == "MOTION") return true;
    }
    return false;
  }

  [[noreturn]] static void fail(const std::string& message, std::size_t line) {
    throw ParseError("line " + std::to_string(line) + ": " + message,
                     {{"line", line}});
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  std::size_t last_line() const {
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Joint> joints_;
  std::vector<JointChannels> channels_;
};

}  // namespace

AnimationClip parse_bvh(std::string_view text, std::string id) {
  return Parser(text).parse(std::move(id));
}

}  // namespace animlens
