import json

import httpx
import pytest

from chorocolor.errors import (
    AuthFailure,
    FixtureMiss,
    ProviderError,
    ProviderTimeout,
    RateLimited,
    UnparseableResponse,
)
from chorocolor.gateway import (
    FixtureBackend,
    HttpBackend,
    LlmGateway,
    PromptBundle,
    ProviderConfig,
    prompt_key,
    render_messages,
)


def bundle_for(payload="hello", stage="design"):
    return PromptBundle(
        stage=stage,
        role_instructions="You are a tester.",
        sections=(("Tasks", "do the thing"),),
        user_payload=payload,
    )


def test_render_messages_shape():
    msgs = render_messages(bundle_for(), history=(("user", "hi"), ("assistant", "yo")))
    assert [m["role"] for m in msgs] == ["system", "user", "assistant", "user"]
    assert msgs[0]["content"].startswith("You are a tester.")
    assert "### Tasks" in msgs[0]["content"]
    assert msgs[-1]["content"] == "hello"


def test_prompt_key_stable_and_history_sensitive():
    b = bundle_for()
    assert prompt_key(b) == prompt_key(bundle_for())
    assert prompt_key(b) != prompt_key(b, history=(("user", "more"),))
    assert prompt_key(b) != prompt_key(bundle_for("other"))


def test_fixture_record_replay_round_trip(tmp_path, no_network):
    backend = FixtureBackend(tmp_path)
    b = bundle_for()
    backend.record(b, "recorded answer")
    gateway = LlmGateway(ProviderConfig(), backend)
    assert gateway.complete(b) == "recorded answer"


def test_fixture_miss_names_hash(tmp_path, no_network):
    backend = FixtureBackend(tmp_path)
    b = bundle_for("unrecorded")
    with pytest.raises(FixtureMiss) as exc:
        backend.complete(ProviderConfig(), b)
    assert prompt_key(b) in str(exc.value)


def _http_gateway(handler, **cfg):
    transport = httpx.MockTransport(handler)
    config = ProviderConfig(base_url="https://llm.test/v1", api_key="k", **cfg)
    return LlmGateway(config, HttpBackend(transport))


def test_live_backend_posts_openai_shape():
    seen = {}

    def handler(request):
        seen["url"] = str(request.url)
        seen["body"] = json.loads(request.content)
        seen["auth"] = request.headers.get("authorization")
        return httpx.Response(200, json={
            "choices": [{"message": {"role": "assistant", "content": "fine"}}]})

    gateway = _http_gateway(handler)
    text = gateway.complete(bundle_for(stage="analysis"))
    assert text == "fine"
    assert seen["url"] == "https://llm.test/v1/chat/completions"
    assert seen["auth"] == "Bearer k"
    assert seen["body"]["model"] == "qwen-long"  # analysis stage model
    assert seen["body"]["temperature"] == 1.0
    assert seen["body"]["max_tokens"] == 8192
    assert seen["body"]["messages"][0]["role"] == "system"


def test_design_stage_uses_design_model():
    def handler(request):
        body = json.loads(request.content)
        assert body["model"] == "qwen-plus"
        return httpx.Response(200, json={
            "choices": [{"message": {"content": "ok"}}]})
    _http_gateway(handler).complete(bundle_for(stage="design"))


def test_http_401_maps_to_auth_failure():
    gateway = _http_gateway(lambda r: httpx.Response(401, text="no"))
    with pytest.raises(AuthFailure):
        gateway.complete(bundle_for())


def test_http_429_maps_to_rate_limited():
    gateway = _http_gateway(
        lambda r: httpx.Response(429, headers={"retry-after": "2.5"}, text="slow down"))
    with pytest.raises(RateLimited) as exc:
        gateway.complete(bundle_for())
    assert exc.value.retry_after == 2.5


def test_http_500_maps_to_provider_error():
    gateway = _http_gateway(lambda r: httpx.Response(502, text="boom"))
    with pytest.raises(ProviderError) as exc:
        gateway.complete(bundle_for())
    assert exc.value.status == 502


def test_timeout_maps_to_provider_timeout():
    def handler(request):
        raise httpx.ConnectTimeout("too slow")
    with pytest.raises(ProviderTimeout):
        _http_gateway(handler).complete(bundle_for())


def test_malformed_completion_payload():
    gateway = _http_gateway(lambda r: httpx.Response(200, json={"nope": True}))
    with pytest.raises(ProviderError):
        gateway.complete(bundle_for())


class ScriptedBackend:
    """Returns canned responses in order; records the conversations."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.calls = []

    def complete(self, cfg, bundle, history=()):
        self.calls.append(tuple(history))
        return self.responses.pop(0)


def parse_strict(text):
    if text != "good":
        raise UnparseableResponse("not good")
    return "parsed"


def test_complete_parsed_retries_once_then_succeeds():
    backend = ScriptedBackend(["bad", "good"])
    gateway = LlmGateway(ProviderConfig(), backend)
    value, raw = gateway.complete_parsed(bundle_for(), parse_strict)
    assert value == "parsed" and raw == "good"
    # the re-ask appends the failed reply and the parse error to the turn list
    assert backend.calls[0] == ()
    roles = [r for r, _ in backend.calls[1]]
    assert roles == ["assistant", "user"]
    assert "not good" in backend.calls[1][1][1]


def test_complete_parsed_surfaces_error_after_retry():
    backend = ScriptedBackend(["bad", "still bad"])
    gateway = LlmGateway(ProviderConfig(), backend)
    with pytest.raises(UnparseableResponse):
        gateway.complete_parsed(bundle_for(), parse_strict)
    assert not backend.responses  # both attempts consumed


def test_provider_config_validation():
    with pytest.raises(ValueError):
        ProviderConfig(temperature=3.0)
    with pytest.raises(ValueError):
        ProviderConfig(model_design="")


def test_provider_config_from_env():
    env = {"CHOROCOLOR_BASE_URL": "https://x/v1", "CHOROCOLOR_API_KEY": "sk",
           "CHOROCOLOR_MODEL_ANALYSIS": "a", "CHOROCOLOR_MODEL_DESIGN": "d"}
    cfg = ProviderConfig.from_env(env)
    assert (cfg.base_url, cfg.api_key, cfg.model_analysis, cfg.model_design) == \
        ("https://x/v1", "sk", "a", "d")


def test_fixture_backend_never_touches_network(tmp_path, no_network):
    backend = FixtureBackend(tmp_path)
    b = bundle_for("net check")
    backend.record(b, "offline")
    # the no_network fixture turns any socket connect into a test failure
    assert LlmGateway(ProviderConfig(), backend).complete(b) == "offline"
