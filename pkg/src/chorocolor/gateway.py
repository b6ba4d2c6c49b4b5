"""Chat-completion access with a deterministic offline replay backend.

The live backend speaks the standard OpenAI-compatible chat API over HTTP.
The fixture backend replays committed responses keyed by a content hash of
the rendered conversation, so the entire pipeline runs offline and
deterministically; an unknown prompt fails loudly instead of inventing
output.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from .errors import (
    AuthFailure,
    FixtureMiss,
    ProviderError,
    ProviderTimeout,
    RateLimited,
    UnparseableResponse,
)

STAGE_ANALYSIS = "analysis"
STAGE_DESIGN = "design"

ENV_BASE_URL = "CHOROCOLOR_BASE_URL"
ENV_API_KEY = "CHOROCOLOR_API_KEY"
ENV_MODEL_ANALYSIS = "CHOROCOLOR_MODEL_ANALYSIS"
ENV_MODEL_DESIGN = "CHOROCOLOR_MODEL_DESIGN"


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str = "https://dashscope.aliyuncs.com/compatible-mode/v1"
    api_key: str = ""
    model_analysis: str = "qwen-long"
    model_design: str = "qwen-plus"
    temperature: float = 1.0
    max_output_tokens: int = 8192
    timeout: float = 60.0

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")
        if not self.model_analysis or not self.model_design:
            raise ValueError("model names must be non-empty")

    @classmethod
    def from_env(cls, env=os.environ) -> "ProviderConfig":
        defaults = cls()
        return cls(
            base_url=env.get(ENV_BASE_URL, defaults.base_url),
            api_key=env.get(ENV_API_KEY, ""),
            model_analysis=env.get(ENV_MODEL_ANALYSIS, defaults.model_analysis),
            model_design=env.get(ENV_MODEL_DESIGN, defaults.model_design),
        )

    def model_for(self, stage: str) -> str:
        return self.model_analysis if stage == STAGE_ANALYSIS else self.model_design


@dataclass(frozen=True)
class PromptBundle:
    stage: str
    role_instructions: str
    sections: tuple[tuple[str, str], ...]
    user_payload: str
    few_shot: tuple[tuple[str, str], ...] = ()

    def system_text(self) -> str:
        parts = [self.role_instructions]
        for name, body in self.sections:
            parts.append(f"### {name}\n{body}")
        return "\n\n".join(parts)

    def section_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.sections)


def render_messages(bundle: PromptBundle, history=()) -> list[dict]:
    """The concrete chat messages for a bundle plus prior turns."""
    messages = [{"role": "system", "content": bundle.system_text()}]
    messages += [{"role": role, "content": content} for role, content in history]
    messages.append({"role": "user", "content": bundle.user_payload})
    return messages


def prompt_key(bundle: PromptBundle, history=()) -> str:
    """Stable content hash identifying one exact conversation."""
    canonical = json.dumps(render_messages(bundle, history),
                           sort_keys=True, ensure_ascii=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()


class FixtureBackend:
    """Replays recorded responses from a directory of hash-named files."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def complete(self, cfg: ProviderConfig, bundle: PromptBundle, history=()) -> str:
        key = prompt_key(bundle, history)
        path = self.root / f"{key}.txt"
        if not path.is_file():
            raise FixtureMiss(key)
        return path.read_text("utf-8")

    def record(self, bundle: PromptBundle, response: str, history=()) -> Path:
        key = prompt_key(bundle, history)
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.root / f"{key}.txt"
        path.write_text(response, "utf-8")
        return path


class HttpBackend:
    """OpenAI-compatible chat-completion client."""

    def __init__(self, transport: httpx.BaseTransport | None = None):
        self._transport = transport  # injectable for tests

    def complete(self, cfg: ProviderConfig, bundle: PromptBundle, history=()) -> str:
        body = {
            "model": cfg.model_for(bundle.stage),
            "messages": render_messages(bundle, history),
            "temperature": cfg.temperature,
            "max_tokens": cfg.max_output_tokens,
        }
        headers = {"Authorization": f"Bearer {cfg.api_key}"}
        try:
            with httpx.Client(transport=self._transport, timeout=cfg.timeout) as client:
                resp = client.post(f"{cfg.base_url.rstrip('/')}/chat/completions",
                                   json=body, headers=headers)
        except httpx.TimeoutException as e:
            raise ProviderTimeout(f"provider timed out after {cfg.timeout}s") from e
        except httpx.HTTPError as e:
            raise ProviderError(f"transport failure: {e}") from e
        if resp.status_code in (401, 403):
            raise AuthFailure("provider rejected the API key", status=resp.status_code,
                              body=resp.text)
        if resp.status_code == 429:
            retry_after = resp.headers.get("retry-after")
            raise RateLimited("provider rate limit hit",
                              retry_after=float(retry_after) if retry_after else None)
        if resp.status_code != 200:
            raise ProviderError(f"provider returned HTTP {resp.status_code}",
                                status=resp.status_code, body=resp.text)
        try:
            return resp.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise ProviderError(f"malformed completion payload: {e}",
                                status=resp.status_code, body=resp.text) from e


@dataclass
class LlmGateway:
    """Stateless front door: config plus one backend."""

    config: ProviderConfig = field(default_factory=ProviderConfig)
    backend: FixtureBackend | HttpBackend = field(default_factory=HttpBackend)

    def complete(self, bundle: PromptBundle, history=()) -> str:
        return self.backend.complete(self.config, bundle, history)

    def complete_parsed(self, bundle: PromptBundle, parser, history=()):
        """Parse the reply; on parse failure, re-ask once with the error
        appended to the conversation, then surface the error."""
        text = self.complete(bundle, history)
        try:
            return parser(text), text
        except UnparseableResponse as e:
            retry_history = tuple(history) + (
                ("assistant", text),
                ("user", f"That reply could not be parsed ({e}). "
                         "Reply again, following the Output Format exactly."),
            )
            text = self.complete(bundle, retry_history)
            return parser(text), text


def offline_gateway(fixtures_dir: str | Path, config: ProviderConfig | None = None) -> LlmGateway:
    return LlmGateway(config or ProviderConfig(), FixtureBackend(fixtures_dir))
