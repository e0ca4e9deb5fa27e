#include "solmut/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "solmut/errors.hpp"

namespace solmut {

namespace {

using Clock = std::chrono::steady_clock;

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (::pipe2(fd, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        for (int f : fd)
            if (f >= 0) ::close(f);
    }
    void close_end(int i) {
        if (fd[i] >= 0) ::close(fd[i]);
        fd[i] = -1;
    }
};

void kill_group(pid_t pid) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
}

} // namespace

std::string shell_quote(std::string_view s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::vector<std::string> shell_argv(const std::string& command, const std::string& arg) {
    return {"/bin/sh", "-c", command + " \"$1\"", "sh", arg};
}

ProcessResult run_process(const ProcessOptions& options) {
    if (options.argv.empty()) throw Error("run_process: empty argv");
    Pipe out, err, status;

    std::vector<char*> argv;
    for (const auto& a : options.argv) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    std::string cwd = options.cwd ? options.cwd->string() : std::string();

    pid_t pid = ::fork();
    if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::setpgid(0, 0);
        int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0) ::dup2(devnull, 0);
        ::dup2(out.fd[1], 1);
        ::dup2(err.fd[1], 2);
        if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) {
            int e = errno;
            (void)!::write(status.fd[1], &e, sizeof e);
            ::_exit(127);
        }
        ::execvp(argv[0], argv.data());
        int e = errno;
        (void)!::write(status.fd[1], &e, sizeof e);
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    out.close_end(1);
    err.close_end(1);
    status.close_end(1);

    int child_errno = 0;
    if (::read(status.fd[0], &child_errno, sizeof child_errno) == sizeof child_errno) {
        int ws;
        ::waitpid(pid, &ws, 0);
        throw Error("cannot run '" + options.argv[0] + "': " + std::strerror(child_errno));
    }

    ProcessResult result;
    const auto start = Clock::now();
    auto last_activity = start;
    std::string pending;
    bool out_open = true, err_open = true;

    auto stop_with = [&](bool timed_out) {
        kill_group(pid);
        result.timed_out = timed_out;
        result.stopped = !timed_out;
    };

    while (out_open || err_open) {
        int wait_ms = -1;
        auto now = Clock::now();
        auto remaining = [&](Clock::time_point limit) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(limit - now).count();
            return static_cast<int>(std::max<long long>(0, ms));
        };
        if (options.deadline.count() > 0) wait_ms = remaining(start + options.deadline);
        if (options.inactivity.count() > 0) {
            int w = remaining(last_activity + options.inactivity);
            wait_ms = wait_ms < 0 ? w : std::min(wait_ms, w);
        }

        pollfd fds[2];
        int nfds = 0;
        if (out_open) fds[nfds++] = {out.fd[0], POLLIN, 0};
        if (err_open) fds[nfds++] = {err.fd[0], POLLIN, 0};
        int rc = ::poll(fds, nfds, wait_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            kill_group(pid);
            throw Error(std::string("poll: ") + std::strerror(errno));
        }
        now = Clock::now();
        if (rc == 0) {
            bool past_deadline = options.deadline.count() > 0 && now >= start + options.deadline;
            bool idle = options.inactivity.count() > 0 && now >= last_activity + options.inactivity;
            if (past_deadline || idle) {
                stop_with(true);
                break;
            }
            continue;
        }
        bool stop = false;
        for (int i = 0; i < nfds; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            char buf[4096];
            ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
            bool is_out = fds[i].fd == out.fd[0];
            if (n <= 0) {
                (is_out ? out_open : err_open) = false;
                continue;
            }
            if (!is_out) {
                result.stderr_text.append(buf, static_cast<std::size_t>(n));
                continue;
            }
            result.stdout_text.append(buf, static_cast<std::size_t>(n));
            pending.append(buf, static_cast<std::size_t>(n));
            std::size_t nl;
            while (!stop && (nl = pending.find('\n')) != std::string::npos) {
                std::string line = pending.substr(0, nl);
                pending.erase(0, nl + 1);
                if (!line.empty() && line.back() == '\r') line.pop_back();
                last_activity = Clock::now();
                if (options.on_line && !options.on_line(line)) stop = true;
            }
        }
        if (stop) {
            stop_with(false);
            break;
        }
    }
    if (!result.timed_out && !result.stopped && !pending.empty() && options.on_line) options.on_line(pending);

    int ws = 0;
    while (::waitpid(pid, &ws, 0) < 0 && errno == EINTR) {
    }
    if (!result.timed_out && !result.stopped && WIFEXITED(ws)) result.exit_code = WEXITSTATUS(ws);
    // Grandchildren that kept the pipes open are gone with the group.
    ::kill(-pid, SIGKILL);
    return result;
}

} // namespace solmut
