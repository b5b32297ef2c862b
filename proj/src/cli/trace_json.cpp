#include "ras/cli/trace_json.hpp"

#include "ras/error.hpp"

namespace ras
{
    using nlohmann::json;

    std::string legality_name(Legality l)
    {
        return l == Legality::Legal ? "legal" : "erroneous";
    }

    json trace_to_json(const ExecutionTrace& trace)
    {
        json rounds = json::array();
        for (std::size_t r = 0; r < trace.rounds.size(); ++r)
        {
            json msgs = json::array();
            for (const auto& m : trace.rounds[r])
            {
                msgs.push_back({{"from", m.from},
                                {"to", m.to},
                                {"tag", std::string(tag_name(m.payload.tag))},
                                {"words", m.payload.words},
                                {"vec", m.payload.vec}});
            }
            rounds.push_back({{"round", r}, {"messages", std::move(msgs)}});
        }
        json outputs = json::array();
        for (const auto& o : trace.outputs)
        {
            json value = nullptr;
            if (!o.output.bottom)
            {
                value = o.output.value.size() == 1 ? json(o.output.value.front()) : json(o.output.value);
            }
            outputs.push_back({{"agent", o.agent}, {"value", std::move(value)}, {"round", o.round}});
        }
        return {{"seed", trace.seed},
                {"rounds", std::move(rounds)},
                {"outputs", std::move(outputs)},
                {"legality", legality_name(trace.legality)},
                {"message_count", trace.message_count},
                {"rounds_executed", trace.rounds_executed}};
    }

    ExecutionTrace trace_from_json(const json& doc)
    {
        try
        {
            ExecutionTrace t;
            t.seed = doc.at("seed").get<std::uint64_t>();
            for (const auto& r : doc.at("rounds"))
            {
                std::vector<Message> msgs;
                const auto round = r.at("round").get<Round>();
                for (const auto& m : r.at("messages"))
                {
                    Message msg;
                    msg.from = m.at("from").get<AgentId>();
                    msg.to = m.at("to").get<AgentId>();
                    msg.round = round;
                    msg.payload.tag = tag_from_name(m.at("tag").get<std::string>());
                    msg.payload.words = m.at("words").get<std::array<std::uint64_t, 4>>();
                    msg.payload.vec = m.at("vec").get<std::vector<std::uint64_t>>();
                    msgs.push_back(std::move(msg));
                }
                t.rounds.push_back(std::move(msgs));
            }
            for (const auto& o : doc.at("outputs"))
            {
                AgentOutput out;
                out.agent = o.at("agent").get<AgentId>();
                out.round = o.at("round").get<Round>();
                const json& v = o.at("value");
                if (v.is_null())
                {
                    out.output = Output::abort();
                }
                else if (v.is_array())
                {
                    out.output = Output{false, v.get<std::vector<std::uint64_t>>()};
                }
                else
                {
                    out.output = Output::scalar(v.get<std::uint64_t>());
                }
                t.outputs.push_back(std::move(out));
            }
            const auto legality = doc.at("legality").get<std::string>();
            if (legality != "legal" && legality != "erroneous")
            {
                throw SchemaError("trace: bad legality " + legality);
            }
            t.legality = legality == "legal" ? Legality::Legal : Legality::Erroneous;
            t.message_count = doc.at("message_count").get<std::size_t>();
            t.rounds_executed = doc.at("rounds_executed").get<Round>();
            return t;
        }
        catch (const json::exception& e)
        {
            throw SchemaError(std::string("trace: ") + e.what());
        }
    }
}
