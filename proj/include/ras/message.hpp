#pragma once

#include "ras/topology.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ras
{
    using Round = std::uint32_t;

    enum class Tag : std::uint8_t
    {
        IdAnnounce,
        IdEcho,
        TopologyAnnounce,
        TopologyEcho,
        SecretShare,
        InputBroadcast,
        Preference,
        PreferenceEcho,
        Commit,
        CommitEcho,
        Token,
        CoinShare,
        Color,
        WitnessMark,
        DrawExchange,
        DrawnValue,
        Prompt,
        PromptReply,
        PromptWitness,
        Relay,
        EdgeBit,
        Abort,
    };

    std::string_view tag_name(Tag tag);
    Tag tag_from_name(std::string_view name);

    struct Payload
    {
        Tag tag = Tag::Abort;
        std::array<std::uint64_t, 4> words{};
        std::vector<std::uint64_t> vec;

        friend bool operator==(const Payload&, const Payload&) = default;
    };

    struct Message
    {
        AgentId from = 0;
        AgentId to = 0;
        Round round = 0; // send round; readable at round + 1
        Payload payload;

        friend bool operator==(const Message&, const Message&) = default;
    };

    // An agent's decision. `bottom` is the abort output; otherwise `value`
    // holds a scalar (size 1) or, for orientation, (neighbor, head) pairs.
    struct Output
    {
        bool bottom = false;
        std::vector<std::uint64_t> value;

        static Output abort() { return Output{true, {}}; }
        static Output scalar(std::uint64_t v) { return Output{false, {v}}; }

        friend bool operator==(const Output&, const Output&) = default;
    };
}
